#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "hpcad/lifting.hpp"
#include "test_support.hpp"

using namespace hpcad;
using namespace hpcad::test;

namespace {

MultiPoly ex1() { return example1().with_nvars(3); }

MultiPoly P2(const std::string& t) { return P(t).with_nvars(2); }

std::vector<SamplePoint> grid(std::size_t dim, int per_axis) {
  std::vector<BigRat> axis;
  for (int k = 0; k < per_axis; ++k) axis.push_back(BigRat(-10) + BigRat(20 * k, per_axis - 1));
  std::vector<SamplePoint> pts{{}};
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<SamplePoint> next;
    for (const auto& p : pts) {
      for (const auto& a : axis) {
        SamplePoint q = p;
        q.push_back(a);
        next.push_back(q);
      }
    }
    pts = std::move(next);
  }
  return pts;
}

std::set<int> signs_on(const MultiPoly& f, const std::vector<SamplePoint>& pts) {
  std::set<int> s;
  for (const auto& p : pts) s.insert(sign_at(f, p));
  s.erase(0);
  return s;
}

bool full_levels(const MultiPoly& f) {
  const std::size_t n = f.nvars();
  MultiPoly g = f;
  for (std::size_t k = n; k-- > 0;) {
    if (g.level() != k + 1) return false;
    if (k > 0) g = bp_single(g, k);
  }
  return true;
}

}  // namespace

TEST_CASE("Example 1 cell counts") {
  for (Strategy st : {Strategy::Simplest, Strategy::Midpoint}) {
    LiftOptions opt;
    opt.strategy = st;
    const OpenSample cad = open_cad(ex1(), opt);
    CHECK(cad.size() == 113);
    CHECK(cad.counts == std::vector<std::size_t>{9, cad.counts[1], 113});
    const OpenSample two = hp_two(ex1(), opt);
    CHECK(two.size() == 87);
    CHECK(two.counts.front() == 7);
    for (const auto& p : two.points) CHECK(sign_at(ex1(), p) != 0);
    for (const auto& p : cad.points) CHECK(sign_at(ex1(), p) != 0);
  }
}

TEST_CASE("reduced open CAD of Example 1") {
  const MultiPoly f = ex1();
  const LiftSpec spec = hp_liftspec(f, 2);
  std::vector<SamplePoint> base;
  for (const auto& x : sp_one(spec.at(1).lift, spec.at(1).guard)) base.push_back({x});
  CHECK(base.size() == 7);
  const OpenSample r = reduced_open_cad(f, 2, base);
  CHECK(r.size() == 87);
  CHECK(r.points == hp_two(f).points);
  CHECK(reduced_base(f, 2) == base);

  CHECK_THROWS_AS(reduced_open_cad(f, 2, {{BigRat(1)}}), InvalidBase);

  const auto top_base = reduced_base(f, 3);
  const OpenSample top = reduced_open_cad(f, 3, top_base);
  for (const auto& p : top.points) CHECK(sign_at(f, p) != 0);
  CHECK(signs_on(f, top.points) == std::set<int>{-1, 1});
}

TEST_CASE("small open samples") {
  const OpenSample empty_variety = open_cad(P2("x^2 + y^2 + 1"));
  CHECK(empty_variety.size() == 1);
  CHECK(open_cad(P("x").with_nvars(1)).points == std::vector<SamplePoint>{{BigRat(-1)}, {BigRat(1)}});
  const OpenSample uni = hp_two(P("x^2 - 1").with_nvars(1));
  REQUIRE(uni.size() == 3);
  CHECK(sign_at(P("x^2 - 1").with_nvars(1), uni.points[0]) > 0);
  CHECK(sign_at(P("x^2 - 1").with_nvars(1), uni.points[1]) < 0);
  CHECK(sign_at(P("x^2 - 1").with_nvars(1), uni.points[2]) > 0);
  CHECK(hp_two(P2("x")).size() == 2);
  CHECK_THROWS_AS(open_cad(P2("3")), DomainError);
  CHECK_THROWS_AS(hp_two(MultiPoly(2)), DomainError);
}

TEST_CASE("open_sp edge cases") {
  const MultiPoly f = P2("x*y - 1");
  LiftSpec spec;
  spec.first = 1;
  spec.levels = {LiftLevel{P2("x"), P2("x")}, LiftLevel{f, f}};
  // Base already at the top level: nothing to lift.
  const std::vector<SamplePoint> top{{BigRat(1), BigRat(3)}};
  CHECK(open_sp(spec, top).points == top);
  // A constant specialized polynomial gives a single child.
  LiftSpec flat = spec;
  flat.levels[1] = LiftLevel{P2("x + 3"), P2("1")};
  CHECK(open_sp(flat, {{BigRat(1)}, {BigRat(-1)}}).size() == 2);
  // Lifting over x = 0 makes x*y - 1 a constant: one cell.
  CHECK(open_sp(spec, {{BigRat(0)}}).size() == 1);
  LiftSpec vanishing = spec;
  vanishing.levels[1] = LiftLevel{P2("x*y"), P2("1")};
  CHECK_THROWS_AS(open_sp(vanishing, {{BigRat(0)}}), NonGenericSample);
}

TEST_CASE("base samples skip points where the next level vanishes") {
  LiftSpec spec;
  spec.first = 1;
  spec.levels = {LiftLevel{P2("x^2 - 2"), P2("1")}, LiftLevel{P2("x*y + x"), P2("1")}};
  const auto base = base_sample(spec);
  REQUIRE(base.size() == 3);
  for (const auto& p : base) CHECK(p[0] != 0);
}

TEST_CASE("threads do not change the output") {
  LiftOptions one;
  LiftOptions four;
  four.threads = 4;
  CHECK(open_cad(ex1(), one).points == open_cad(ex1(), four).points);
  CHECK(hp_two(ex1(), one).points == hp_two(ex1(), four).points);
}

TEST_CASE("cancellation") {
  CancelToken token;
  token.cancel();
  LiftOptions opt;
  opt.cancel = &token;
  CHECK_THROWS_AS(open_cad(ex1(), opt), Cancelled);
}

TEST_CASE("property: sign coverage against a grid") {
  std::mt19937_64 rng(41);
  const auto g2 = grid(2, 50);
  int done = 0;
  while (done < 100) {
    const MultiPoly f = random_poly(rng, 2, 6, 5, 6, 2);
    if (f.is_constant()) continue;
    ++done;
    const OpenSample s = hp_two(f);
    for (const auto& p : s.points) REQUIRE(sign_at(f, p) != 0);
    const auto want = signs_on(f, g2);
    const auto got = signs_on(f, s.points);
    for (int sg : want) CHECK(got.count(sg) == 1);
  }
  const auto g3 = grid(3, 12);
  done = 0;
  while (done < 15) {
    const MultiPoly f = random_poly(rng, 3, 3, 4, 5, 3);
    if (f.is_constant()) continue;
    ++done;
    const OpenSample s = hp_two(f);
    const auto got = signs_on(f, s.points);
    for (int sg : signs_on(f, g3)) CHECK(got.count(sg) == 1);
  }
}

TEST_CASE("property: counts do not depend on the sample strategy") {
  std::mt19937_64 rng(42);
  LiftOptions simplest;
  LiftOptions midpoint;
  midpoint.strategy = Strategy::Midpoint;
  for (int it = 0; it < 30; ++it) {
    const MultiPoly f = random_poly(rng, 2 + it % 2, 3, 4, 5, 2 + it % 2);
    if (f.is_constant()) continue;
    const OpenSample a = open_cad(f, simplest);
    const OpenSample b = open_cad(f, midpoint);
    CHECK(a.counts == b.counts);
    std::multiset<int> sa;
    std::multiset<int> sb;
    for (const auto& p : a.points) sa.insert(sign_at(f, p));
    for (const auto& p : b.points) sb.insert(sign_at(f, p));
    CHECK(sa == sb);
    CHECK(hp_two(f, simplest).counts == hp_two(f, midpoint).counts);
  }
}

TEST_CASE("property: reduced open CAD matches the two-variable descent for n = 3") {
  std::mt19937_64 rng(43);
  int done = 0;
  for (int it = 0; it < 60 && done < 15; ++it) {
    const MultiPoly f = random_poly(rng, 3, 3, 4, 5, 3);
    if (!full_levels(f) || hp(f, {2, 1}).level() != 1) continue;
    ++done;
    const OpenSample r = reduced_open_cad(f, 2, reduced_base(f, 2));
    CHECK(r.size() == hp_two(f).size());
  }
  CHECK(done > 5);
}
