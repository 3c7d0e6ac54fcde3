#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "document.hpp"
#include "hpcad/corpus.hpp"
#include "hpcad/psd.hpp"
#include "hpcad/text.hpp"

namespace hpcad::cli {

namespace {

struct Flags {
  std::string poly;
  std::string file;
  std::string order;
  std::string strategy = "simplest";
  std::string method;
  unsigned threads = 1;
  double timeout = 0;
  bool json = false;
  std::string family;
  std::size_t n = 5;
  std::size_t m = 1;
};

class TimedOut : public Error {
 public:
  explicit TimedOut(std::string stage) : Error("timed out"), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Progress shared between the command and the timeout watchdog.
struct Progress {
  std::mutex mu;
  std::string stage = "start";

  void set(std::string s) {
    std::lock_guard lock(mu);
    stage = std::move(s);
  }
  std::string get() {
    std::lock_guard lock(mu);
    return stage;
  }
};

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  return out;
}

std::string read_input(const Flags& f) {
  if (!f.poly.empty() && !f.file.empty()) throw DomainError("give the polynomial either inline or with --file, not both");
  if (!f.poly.empty()) return f.poly;
  if (!f.file.empty()) {
    std::ifstream in(f.file);
    if (!in) throw DomainError("cannot read '" + f.file + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  return std::string(std::istreambuf_iterator<char>(std::cin), {});
}

ParsedPoly input_poly(const Flags& f) {
  std::optional<std::vector<std::string>> order;
  if (!f.order.empty()) order = split_names(f.order);
  return parse_poly(read_input(f), order);
}

Strategy strategy_of(const Flags& f) {
  auto s = parse_strategy(f.strategy);
  if (!s) throw DomainError("unknown strategy '" + f.strategy + "'");
  return *s;
}

struct Method {
  std::string name;
  std::size_t j = 0;
};

Method parse_method(const std::string& text) {
  if (text == "opencad" || text == "hptwo") return {text, 0};
  if (text.rfind("reduced:", 0) == 0) {
    const std::string rest = text.substr(8);
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return {"reduced", std::stoul(rest)};
    }
  }
  throw DomainError("unknown method '" + text + "'");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string point_text(const SamplePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

void print_counts(std::ostream& out, const ResultDocument& d) {
  for (std::size_t k = 0; k < d.counts.size(); ++k) out << "level_" << d.first_level + k << " " << d.counts[k] << "\n";
  out << "total " << d.total() << "\n";
}

void print_sample(std::ostream& out, const ResultDocument& d) {
  out << "method " << d.method << ", strategy " << d.strategy << "\n";
  out << "order " << join(d.order, " > ") << "\n";
  print_counts(out, d);
  for (const auto& p : d.samples) out << point_text(p) << "\n";
}

OpenSample run_sample(const MultiPoly& f, const Method& m, const LiftOptions& lo, Progress& progress) {
  if (f.is_zero()) throw DomainError("cannot sample the zero polynomial");
  if (m.name == "opencad") {
    progress.set("opencad");
    return open_cad(f, lo);
  }
  if (m.name == "hptwo") {
    progress.set("hptwo");
    return hp_two(f, lo);
  }
  if (m.j < 2 || m.j > f.nvars()) throw DomainError("reduced:j needs 2 <= j <= number of variables");
  progress.set("reduced base");
  auto base = reduced_base(f, m.j, lo);
  progress.set("reduced lifting");
  return reduced_open_cad(f, m.j, std::move(base), lo);
}

int cmd_sample(const Flags& fl, std::ostream& out, const CancelToken& token, Progress& progress) {
  const Method m = parse_method(fl.method.empty() ? "hptwo" : fl.method);
  const Strategy st = strategy_of(fl);
  progress.set("parse");
  const ParsedPoly p = input_poly(fl);
  const auto t0 = std::chrono::steady_clock::now();
  LiftOptions lo;
  lo.strategy = st;
  lo.threads = fl.threads;
  lo.cancel = &token;
  ResultDocument d = sample_document(run_sample(p.poly, m, lo, progress), p.order);
  d.ms = elapsed_ms(t0);
  if (fl.json) {
    out << to_json(d).dump() << "\n";
  } else {
    print_sample(out, d);
  }
  return 0;
}

int cmd_psd(const Flags& fl, std::ostream& out, const CancelToken& token, Progress& progress) {
  const std::string method = fl.method.empty() ? "hptwo" : fl.method;
  if (method != "hptwo" && method != "sample") throw DomainError("psd method must be hptwo or sample");
  const Strategy st = strategy_of(fl);
  progress.set("parse");
  const ParsedPoly p = input_poly(fl);
  const auto t0 = std::chrono::steady_clock::now();
  PsdOptions po;
  po.strategy = st;
  po.threads = fl.threads;
  po.cancel = &token;
  progress.set("psd " + method);
  const PsdVerdict v = method == "hptwo" ? psd_hp_two(p.poly, po) : psd_by_sample(p.poly, po);
  ResultDocument d = psd_document(v, p.order, "psd-" + method, st);
  d.ms = elapsed_ms(t0);
  if (fl.json) {
    out << to_json(d).dump() << "\n";
  } else {
    out << to_string(v.verdict) << " (" << to_string(v.trace) << ")\n";
    if (v.witness) {
      out << "witness " << point_text(*v.witness) << " over " << join(d.variables, ", ") << "\n";
      out << "value " << to_string(evaluate(p.poly, *v.witness)) << "\n";
    }
  }
  return v.psd() ? 0 : 1;
}

int cmd_compare(const Flags& fl, std::ostream& out, const CancelToken& token, Progress& progress) {
  const Strategy st = strategy_of(fl);
  progress.set("parse");
  const ParsedPoly p = input_poly(fl);
  LiftOptions lo;
  lo.strategy = st;
  lo.threads = fl.threads;
  lo.cancel = &token;
  std::vector<ResultDocument> docs;
  for (const char* name : {"hptwo", "opencad"}) {
    const auto t0 = std::chrono::steady_clock::now();
    ResultDocument d = sample_document(run_sample(p.poly, parse_method(name), lo, progress), p.order);
    d.ms = elapsed_ms(t0);
    docs.push_back(std::move(d));
  }
  if (fl.json) {
    nlohmann::ordered_json j;
    j["hptwo"] = to_json(docs[0]);
    j["opencad"] = to_json(docs[1]);
    out << j.dump() << "\n";
    return 0;
  }
  out << "order " << join(docs[0].order, " > ") << ", strategy " << docs[0].strategy << "\n";
  out << "level hptwo opencad\n";
  for (std::size_t k = 0; k < docs[0].counts.size(); ++k) {
    out << "level_" << k + 1 << " " << docs[0].counts[k] << " " << docs[1].counts[k] << "\n";
  }
  out << "total " << docs[0].total() << " " << docs[1].total() << "\n";
  return 0;
}

int cmd_corpus(const Flags& fl, std::ostream& out) {
  const std::size_t size = fl.family == "B" ? fl.m : fl.n;
  const ParsedPoly p = corpus(fl.family, size);
  const std::string text = to_string(p.poly, p.order);
  if (fl.json) {
    nlohmann::ordered_json j;
    j["variables"] = p.order.innermost_first();
    j["order"] = p.order.outermost_first();
    j["polynomial"] = text;
    out << j.dump() << "\n";
  } else {
    out << text << "\n";
  }
  return 0;
}

int cmd_parse(const Flags& fl, std::ostream& out) {
  const ParsedPoly p = input_poly(fl);
  const std::string text = to_string(p.poly, p.order);
  if (fl.json) {
    nlohmann::ordered_json j;
    j["variables"] = p.order.innermost_first();
    j["order"] = p.order.outermost_first();
    j["polynomial"] = text;
    out << j.dump() << "\n";
  } else {
    out << "order " << join(p.order.outermost_first(), " > ") << "\n" << text << "\n";
  }
  return 0;
}

// Runs body on a worker thread and cancels it when the timeout expires.
RunResult with_timeout(double seconds, const std::function<int(const CancelToken&, Progress&)>& body,
                       std::ostream& out, std::ostream& err, bool json) {
  struct Shared {
    CancelToken token;
    Progress progress;
    std::mutex mu;
    std::condition_variable cv;
    bool done = false;
    int code = 0;
    std::exception_ptr error;
  };
  auto shared = std::make_shared<Shared>();
  auto report = [&](const std::string& stage) {
    if (json) {
      nlohmann::ordered_json j;
      j["error"] = "timeout";
      j["stage"] = stage;
      j["ms"] = seconds * 1000;
      out << j.dump() << "\n";
    }
    err << "error: timed out after " << seconds << " s during " << stage << "\n";
  };
  if (seconds <= 0) return {body(shared->token, shared->progress), false};
  std::thread worker([shared, body] {
    CancelScope scope(&shared->token);
    int code = 0;
    std::exception_ptr error;
    try {
      code = body(shared->token, shared->progress);
    } catch (...) {
      error = std::current_exception();
    }
    std::lock_guard lock(shared->mu);
    shared->code = code;
    shared->error = error;
    shared->done = true;
    shared->cv.notify_all();
  });
  std::unique_lock lock(shared->mu);
  const auto limit = std::chrono::duration<double>(seconds);
  if (!shared->cv.wait_for(lock, limit, [&] { return shared->done; })) {
    shared->token.cancel();
    if (!shared->cv.wait_for(lock, std::chrono::seconds(2), [&] { return shared->done; })) {
      lock.unlock();
      worker.detach();
      report(shared->progress.get());
      return {2, true};
    }
    lock.unlock();
    worker.join();
    report(shared->progress.get());
    return {2, false};
  }
  lock.unlock();
  worker.join();
  if (shared->error) std::rethrow_exception(shared->error);
  return {shared->code, false};
}

}  // namespace

RunResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Open CAD sampling and polynomial semi-definiteness"};
  app.require_subcommand(1);
  Flags fl;
  auto common = [&](CLI::App* c) {
    c->add_option("poly", fl.poly, "polynomial text (read from stdin when absent)");
    c->add_option("--file", fl.file, "read the polynomial from a file");
    c->add_option("--order", fl.order, "variables, outermost first, e.g. z,y,x");
    c->add_option("--strategy", fl.strategy, "sample strategy: simplest or midpoint");
    c->add_option("--threads", fl.threads, "worker threads")->check(CLI::Range(1u, 256u));
    c->add_option("--timeout", fl.timeout, "seconds before giving up (0 = none)")->check(CLI::NonNegativeNumber);
    c->add_flag("--json", fl.json, "emit a JSON document");
  };
  CLI::App* sample = app.add_subcommand("sample", "open sample of f != 0");
  common(sample);
  sample->add_option("--method", fl.method, "opencad, hptwo or reduced:j");
  CLI::App* psd = app.add_subcommand("psd", "decide whether f >= 0 everywhere");
  common(psd);
  psd->add_option("--method", fl.method, "hptwo or sample");
  CLI::App* compare = app.add_subcommand("compare", "hptwo and opencad cell counts side by side");
  common(compare);
  CLI::App* corp = app.add_subcommand("corpus", "print a built-in benchmark polynomial");
  corp->add_option("family", fl.family, "ex1, F, G or B")->required()->check(CLI::IsMember({"ex1", "F", "G", "B"}));
  corp->add_option("--n", fl.n, "number of variables for F and G");
  corp->add_option("--m", fl.m, "size parameter for B");
  corp->add_flag("--json", fl.json, "emit JSON");
  CLI::App* parse = app.add_subcommand("parse", "print the canonical form of a polynomial");
  parse->add_option("poly", fl.poly, "polynomial text (read from stdin when absent)");
  parse->add_option("--file", fl.file, "read the polynomial from a file");
  parse->add_option("--order", fl.order, "variables, outermost first");
  parse->add_flag("--json", fl.json, "emit JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, false};
  }
  try {
    if (corp->parsed()) return {cmd_corpus(fl, out), false};
    if (parse->parsed()) return {cmd_parse(fl, out), false};
    strategy_of(fl);
    if (!fl.method.empty() && sample->parsed()) parse_method(fl.method);
    std::function<int(const CancelToken&, Progress&)> body;
    std::ostringstream buffer;
    if (sample->parsed()) body = [&](const CancelToken& t, Progress& p) { return cmd_sample(fl, buffer, t, p); };
    if (psd->parsed()) body = [&](const CancelToken& t, Progress& p) { return cmd_psd(fl, buffer, t, p); };
    if (compare->parsed()) body = [&](const CancelToken& t, Progress& p) { return cmd_compare(fl, buffer, t, p); };
    const RunResult r = with_timeout(fl.timeout, body, out, err, fl.json);
    if (r.abandoned) return r;
    if (r.exit_code != 2) out << buffer.str();
    return r;
  } catch (const Cancelled&) {
    err << "error: cancelled\n";
    return {2, false};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return {2, false};
  }
}

}  // namespace hpcad::cli
