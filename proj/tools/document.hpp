#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpcad/psd.hpp"
#include "hpcad/text.hpp"
#include "json.hpp"

namespace hpcad::cli {

/// Serializable result of one command. Rationals travel as "p/q" strings.
struct ResultDocument {
  std::vector<std::string> variables;  // x_1 first
  std::vector<std::string> order;      // outermost first
  std::string method;
  std::string strategy;
  std::size_t first_level = 1;
  std::vector<std::size_t> counts;  // counts[k] is the size at level first_level + k
  std::vector<SamplePoint> samples;
  std::optional<Verdict> verdict;
  std::optional<SamplePoint> witness;
  std::optional<std::string> trace;
  double ms = 0;

  std::size_t total() const { return samples.size(); }
};

ResultDocument sample_document(const OpenSample& s, const VarOrder& order);
ResultDocument psd_document(const PsdVerdict& v, const VarOrder& order, const std::string& method, Strategy strategy);

nlohmann::ordered_json to_json(const ResultDocument& d);
ResultDocument from_json(const nlohmann::json& j);

/// Parses "p", "-p" or "p/q"; throws DomainError on anything else.
BigRat parse_rational(const std::string& text);

}  // namespace hpcad::cli
