// Acceptance checks: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "hpcad/corpus.hpp"
#include "hpcad/psd.hpp"
#include "test_support.hpp"

using namespace hpcad;
using namespace hpcad::test;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MultiPoly ex1() { return example1().with_nvars(3); }

MultiPoly norm(const std::string& text) { return normalize(P(text).with_nvars(3)); }

Outcome projection_chain() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const MultiPoly f = ex1();
  o.require(bp_single(f, Z) == norm("(x^4-2*x^2*y^2+y^4+2*x^2+2*y^2-4)*(3*x^2-y^2-4)^2"), "bp_single(f, z)");
  o.require(bp_chain(f, {Z, Y}) == norm("(3*x^2-4)*(x^4+2*x^2-4)*(4*x^2-5)^2*(x-1)^8*(x+1)^8"), "bp_chain(f, [z, y])");
  o.require(bp_chain(f, {Y, Z}) == norm("(3*x^2-4)^2*(x^4+2*x^2-4)*(4*x^2-5)*(6*x^2-7)^8"), "bp_chain(f, [y, z])");
  o.require(hp(f, {Z, Y}) == norm("(3*x^2-4)*(x^4+2*x^2-4)*(4*x^2-5)"), "hp(f, {z, y})");
  const double s = seconds_since(t0);
  o.require(s < 5, "took longer than 5 s");
  if (o.ok) o.detail = std::to_string(s) + " s";
  return o;
}

Outcome root_counts() {
  Outcome o;
  const MultiPoly f = ex1();
  const MultiPoly chain = bp_chain(f, {Z, Y}).with_nvars(1);
  const MultiPoly h = hp(f, {Z, Y}).with_nvars(1);
  const std::size_t a = isolate(chain).size();
  const std::size_t b = isolate(h).size();
  o.require(a == 8, "bp_chain has " + std::to_string(a) + " real roots");
  o.require(b == 6, "hp has " + std::to_string(b) + " real roots");
  o.require(sturm_count(sqrf(chain)) == 8, "Sturm count of bp_chain");
  o.require(sturm_count(sqrf(h)) == 6, "Sturm count of hp");
  if (o.ok) o.detail = "8 and 6 real roots";
  return o;
}

Outcome cell_counts() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (Strategy st : {Strategy::Simplest, Strategy::Midpoint}) {
    LiftOptions lo;
    lo.strategy = st;
    const std::size_t a = open_cad(ex1(), lo).size();
    const std::size_t b = hp_two(ex1(), lo).size();
    o.require(a == 113, "open_cad gave " + std::to_string(a) + " with " + to_string(st));
    o.require(b == 87, "hp_two gave " + std::to_string(b) + " with " + to_string(st));
  }
  const double s = seconds_since(t0);
  o.require(s < 30, "took longer than 30 s");
  if (o.ok) o.detail = "113 and 87 under both strategies, " + std::to_string(s) + " s";
  return o;
}

Outcome f5_psd() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const PsdVerdict v = psd_hp_two(corpus_f(5).poly);
  const double s = seconds_since(t0);
  o.require(v.psd(), "F(x5) reported not PSD");
  o.require(s < 300, "took longer than 300 s");
  if (o.ok) o.detail = "PSD via " + to_string(v.trace) + ", " + std::to_string(s) + " s";
  return o;
}

// Stretch goal, not a gate: run with --stretch.
Outcome f8_psd() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const PsdVerdict v = psd_hp_two(corpus_f(8).poly);
  const double s = seconds_since(t0);
  o.require(v.psd(), "F(x8) reported not PSD");
  o.require(s < 3600, "took longer than 3600 s");
  if (o.ok) o.detail = "PSD via " + to_string(v.trace) + ", " + std::to_string(s) + " s";
  return o;
}

Outcome g5_not_psd() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const MultiPoly g = corpus_g(5).poly;
  const PsdVerdict v = psd_hp_two(g);
  const double s = seconds_since(t0);
  o.require(!v.psd(), "G(x5) reported PSD");
  o.require(v.witness && sign_at(g, *v.witness) < 0, "witness is not negative");
  o.require(s < 300, "took longer than 300 s");
  if (o.ok) {
    o.detail = "witness (";
    for (std::size_t i = 0; i < v.witness->size(); ++i) o.detail += (i ? ", " : "") + to_string((*v.witness)[i]);
    o.detail += "), value " + to_string(evaluate(g, *v.witness)) + ", " + std::to_string(s) + " s";
  }
  return o;
}

std::pair<int, std::string> cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const auto r = cli::run(args, out, err);
  return {r.exit_code, out.str()};
}

Outcome b_equals_f() {
  Outcome o;
  const auto [cb, b] = cli({"corpus", "B", "--m", "1"});
  const auto [cf, f] = cli({"corpus", "F", "--n", "5"});
  o.require(cb == 0 && cf == 0, "corpus command failed");
  o.require(b == f, "polynomials differ");
  const auto [vb, jb] = cli({"psd", b, "--json"});
  const auto [vf, jf] = cli({"psd", f, "--json"});
  o.require(vb == vf, "psd exit codes differ");
  o.require(vb == 0, "psd verdict is not PSD");
  const std::regex verdict("\"verdict\":\"[a-z_]+\"");
  std::smatch mb;
  std::smatch mf;
  o.require(std::regex_search(jb, mb, verdict) && std::regex_search(jf, mf, verdict) && mb.str() == mf.str(),
            "verdict fields differ");
  if (o.ok) o.detail = "identical polynomial and verdict psd";
  return o;
}

// The property suites.
Outcome property_suites() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  int pairs = 0;
  while (pairs < 200) {
    const MultiPoly f = random_poly(rng, 2, 4, 4, 6, 2);
    const MultiPoly g = random_poly(rng, 2, 4, 4, 6, 2);
    const Var v = static_cast<Var>(pairs % 2);
    if (f.degree(v) < 1 || g.degree(v) < 1) continue;
    ++pairs;
    o.require(resultant(f, g, v) == sylvester_resultant(f, g, v), "resultant differs from Sylvester determinant");
  }
  std::uniform_int_distribution<long> coef(-1000, 1000);
  std::uniform_int_distribution<unsigned> degree(1, 12);
  for (int it = 0; it < 500; ++it) {
    const unsigned d = degree(rng);
    std::vector<Term> terms;
    for (unsigned k = 0; k <= d; ++k) terms.push_back(Term{Exponents{k}, BigInt(k == d ? coef(rng) | 1 : coef(rng))});
    const MultiPoly u = MultiPoly::from_terms(1, std::move(terms));
    o.require(static_cast<int>(isolate(u).size()) == sturm_count(sqrf(u)), "isolate disagrees with the Sturm count");
  }
  int tri = 0;
  while (tri < 100) {
    const MultiPoly f = random_poly(rng, 3, 3, 4, 5, 3);
    if (f.level() < 3 || f.degree(0) < 1 || f.degree(1) < 1) continue;
    ++tri;
    for (std::vector<Var> vars : {std::vector<Var>{2, 1}, std::vector<Var>{2, 1, 0}, std::vector<Var>{1, 0}}) {
      const MultiPoly h = hp(f, vars);
      std::sort(vars.begin(), vars.end());
      do {
        o.require(divides(h, bp_chain(f, vars)), "hp does not divide an order chain");
      } while (std::next_permutation(vars.begin(), vars.end()));
    }
  }
  std::vector<SamplePoint> grid;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) grid.push_back({BigRat(-10) + BigRat(20 * i, 49), BigRat(-10) + BigRat(20 * j, 49)});
  }
  int bi = 0;
  while (bi < 100) {
    const MultiPoly f = random_poly(rng, 2, 6, 5, 6, 2);
    if (f.is_constant()) continue;
    ++bi;
    std::set<int> want;
    std::set<int> got;
    for (const auto& p : grid) want.insert(sign_at(f, p));
    for (const auto& p : hp_two(f).points) got.insert(sign_at(f, p));
    want.erase(0);
    o.require(!got.count(0), "a sample lies on f = 0");
    for (int s : want) o.require(got.count(s) == 1, "a grid sign is missing from the open sample");
  }
  for (int it = 0; it < 50; ++it) {
    MultiPoly f = random_poly(rng, 3, 4, 5, 6, 3);
    if (it % 2 == 1) {
      const MultiPoly a = random_poly(rng, 3, 2, 3, 3, 3);
      const MultiPoly b = random_poly(rng, 3, 2, 3, 3, 3);
      f = a * a + b * b + MultiPoly::constant(3, BigInt(it % 3 - 1));
    }
    const PsdVerdict a = psd_hp_two(f);
    o.require(a.verdict == psd_by_sample(f).verdict, "psd_hp_two disagrees with psd_by_sample");
    o.require(a.psd() || sign_at(f, *a.witness) < 0, "witness is not negative");
  }
  for (int it = 0; it < 50; ++it) {
    const MultiPoly g = random_poly(rng, 3, 2, 3, 4, 3);
    const MultiPoly h = random_poly(rng, 3, 3, 4, 5, 3);
    if (g.is_zero() || h.is_zero()) continue;
    o.require(psd_hp_two(g * g * h).verdict == psd_hp_two(h).verdict, "a squared factor changed the verdict");
  }
  const double s = seconds_since(t0);
  o.require(s < 900, "took longer than 15 min");
  if (o.ok) o.detail = "all six suites, " + std::to_string(s) + " s";
  return o;
}

std::string without_ms(const std::string& s) {
  static const std::regex ms("\"ms\":[-0-9.eE+]+");
  return std::regex_replace(s, ms, "\"ms\":0");
}

Outcome determinism() {
  Outcome o;
  const std::string e1 = "x^4 - 2*x^2*y^2 + 2*x^2*z^2 + y^4 - 2*y^2*z^2 + z^4 + 2*x^2 + 2*y^2 - 4*z^2 - 4";
  const std::string f5 = cli({"corpus", "F", "--n", "5"}).second;
  const std::string g5 = cli({"corpus", "G", "--n", "5"}).second;
  const std::vector<std::vector<std::string>> commands{
      {"sample", e1, "--order", "z,y,x", "--method", "opencad"},
      {"sample", e1, "--order", "z,y,x", "--method", "hptwo", "--strategy", "midpoint"},
      {"sample", e1, "--order", "z,y,x", "--method", "reduced:2"},
      {"sample", e1, "--order", "z,y,x", "--method", "reduced:3"},
      {"compare", e1, "--order", "z,y,x"},
      {"psd", f5},
      {"psd", g5},
      {"psd", g5, "--method", "sample"},
  };
  for (auto args : commands) {
    args.push_back("--json");
    auto one = args;
    auto four = args;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto a = cli(one);
    const auto b = cli(four);
    o.require(a.first == b.first, "exit codes differ for " + args[0]);
    o.require(without_ms(a.second) == without_ms(b.second), "documents differ for " + args[0]);
  }
  if (o.ok) o.detail = std::to_string(commands.size()) + " commands byte-identical apart from ms";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool stretch = argc > 1 && std::string(argv[1]) == "--stretch";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Example 1 projection chain", projection_chain},
      {"Example 1 root counts", root_counts},
      {"Example 1 cell counts", cell_counts},
      {"F(x5) is PSD", f5_psd},
      {"G(x5) is not PSD with a negative witness", g5_not_psd},
      {"corpus B m=1 equals corpus F n=5", b_equals_f},
      {"property suites", property_suites},
      {"thread-count determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.ok ? 0 : 1;
    std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
  }
  if (stretch) {
    Outcome o;
    try {
      o = f8_psd();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << "stretch: " << (o.ok ? "PASS" : "FAIL") << "  F(x8) is PSD within 3600 s (" << o.detail << ")"
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
