#include "document.hpp"

#include <map>
#include <regex>

namespace hpcad::cli {

namespace {

nlohmann::ordered_json point_json(const SamplePoint& p) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& x : p) a.push_back(to_string(x));
  return a;
}

SamplePoint point_from(const nlohmann::json& j) {
  SamplePoint p;
  for (const auto& x : j) p.push_back(parse_rational(x.get<std::string>()));
  return p;
}

}  // namespace

ResultDocument sample_document(const OpenSample& s, const VarOrder& order) {
  ResultDocument d;
  d.variables = order.innermost_first();
  d.order = order.outermost_first();
  d.method = s.method;
  d.strategy = to_string(s.strategy);
  d.first_level = s.first_level;
  d.counts = s.counts;
  d.samples = s.points;
  return d;
}

ResultDocument psd_document(const PsdVerdict& v, const VarOrder& order, const std::string& method, Strategy strategy) {
  ResultDocument d;
  d.variables = order.innermost_first();
  d.order = order.outermost_first();
  d.method = method;
  d.strategy = to_string(strategy);
  d.verdict = v.verdict;
  d.witness = v.witness;
  d.trace = to_string(v.trace);
  return d;
}

nlohmann::ordered_json to_json(const ResultDocument& d) {
  nlohmann::ordered_json j;
  j["variables"] = d.variables;
  j["order"] = d.order;
  j["method"] = d.method;
  j["strategy"] = d.strategy;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < d.counts.size(); ++k) counts["level_" + std::to_string(d.first_level + k)] = d.counts[k];
  counts["total"] = d.total();
  j["counts"] = counts;
  auto samples = nlohmann::ordered_json::array();
  for (const auto& p : d.samples) samples.push_back(point_json(p));
  j["samples"] = samples;
  j["verdict"] = d.verdict ? nlohmann::ordered_json(to_string(*d.verdict)) : nlohmann::ordered_json(nullptr);
  j["witness"] = d.witness ? point_json(*d.witness) : nlohmann::ordered_json(nullptr);
  if (d.trace) j["trace"] = *d.trace;
  j["ms"] = d.ms;
  return j;
}

ResultDocument from_json(const nlohmann::json& j) {
  ResultDocument d;
  d.variables = j.at("variables").get<std::vector<std::string>>();
  d.order = j.at("order").get<std::vector<std::string>>();
  d.method = j.at("method").get<std::string>();
  d.strategy = j.at("strategy").get<std::string>();
  std::size_t lowest = 0;
  std::map<std::size_t, std::size_t> levels;
  for (const auto& [key, value] : j.at("counts").items()) {
    if (key.rfind("level_", 0) != 0) continue;
    const std::size_t k = std::stoul(key.substr(6));
    levels[k] = value.get<std::size_t>();
    if (lowest == 0 || k < lowest) lowest = k;
  }
  d.first_level = lowest == 0 ? 1 : lowest;
  for (const auto& [k, v] : levels) d.counts.push_back(v);
  for (const auto& p : j.at("samples")) d.samples.push_back(point_from(p));
  if (!j.at("verdict").is_null()) d.verdict = j.at("verdict") == "psd" ? Verdict::Psd : Verdict::NotPsd;
  if (!j.at("witness").is_null()) d.witness = point_from(j.at("witness"));
  if (j.contains("trace")) d.trace = j.at("trace").get<std::string>();
  d.ms = j.at("ms").get<double>();
  return d;
}

BigRat parse_rational(const std::string& text) {
  static const std::regex pattern("-?[0-9]+(/[0-9]+)?");
  if (!std::regex_match(text, pattern)) throw DomainError("not a rational: '" + text + "'");
  BigRat q(text);
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace hpcad::cli
