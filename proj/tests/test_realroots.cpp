#include <random>

#include "doctest.h"
#include "hpcad/realroots.hpp"
#include "test_support.hpp"

using namespace hpcad;
using namespace hpcad::test;

namespace {

const MultiPoly& fzy() {
  static const MultiPoly p = P("(3*x^2-4)*(x^4+2*x^2-4)*(4*x^2-5)^2*(x-1)^8*(x+1)^8");
  return p;
}

const MultiPoly& hp_zy() {
  static const MultiPoly p = P("(3*x^2-4)*(x^4+2*x^2-4)*(4*x^2-5)");
  return p;
}

MultiPoly from_dense(const std::vector<BigInt>& c) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) terms.push_back(Term{Exponents{static_cast<std::uint32_t>(i)}, c[i]});
  }
  return MultiPoly::from_terms(1, std::move(terms));
}

void check_isolation(const MultiPoly& u) {
  const RootList rl = isolate(u);
  const MultiPoly s = sqrf(u);
  CHECK(static_cast<int>(rl.size()) == sturm_count(s));
  for (std::size_t i = 0; i < rl.size(); ++i) {
    const auto& r = rl.roots()[i];
    if (r.exact) {
      CHECK(evaluate(s, {r.lower}) == 0);
    } else {
      CHECK(r.lower < r.upper);
      CHECK(sturm_count(s, r.lower, r.upper) == 1);
    }
    if (i + 1 < rl.size()) CHECK(r.upper <= rl.roots()[i + 1].lower);
  }
}

void check_sp_one(const MultiPoly& f, const MultiPoly& g, Strategy st) {
  const auto pts = sp_one(f, g, st);
  const MultiPoly s = sqrf(f);
  const int nroots = sturm_count(s);
  CHECK(static_cast<int>(pts.size()) == nroots + 1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(evaluate(f, {pts[i]}) != 0);
    CHECK(evaluate(g, {pts[i]}) != 0);
    if (i + 1 < pts.size()) {
      CHECK(pts[i] < pts[i + 1]);
      CHECK(sturm_count(s, pts[i], pts[i + 1]) == 1);
    }
  }
}

}  // namespace

TEST_CASE("isolate") {
  const RootList two = isolate(P("x^2 - 2"));
  REQUIRE(two.size() == 2);
  for (const auto& r : two.roots()) {
    CHECK(!r.exact);
    CHECK((r.lower * r.lower - 2) * (r.upper * r.upper - 2) < 0);
  }
  CHECK(two.roots()[0].upper <= 0);
  CHECK(isolate(sqrf(fzy())).size() == 8);
  CHECK(isolate(fzy()).size() == 8);
  CHECK(isolate(hp_zy()).size() == 6);
  CHECK(isolate(P("x^2 + 1")).size() == 0);
  CHECK(isolate(P("7")).size() == 0);
  CHECK_THROWS_AS(isolate(MultiPoly(4)), DomainError);

  const RootList exact = isolate(P("(2*x - 1)*(x - 3)*(4*x + 1)*x"));
  REQUIRE(exact.size() == 4);
  check_isolation(P("(2*x - 1)*(x - 3)*(4*x + 1)*x"));
  check_isolation(fzy());
}

TEST_CASE("refinement") {
  const RootList rl = isolate(P("x^2 - 2"));
  const RootList fine = rl.refined(1, BigRat(1, 1000));
  const auto& r = fine.roots()[1];
  CHECK(r.upper - r.lower < BigRat(1, 1000));
  CHECK(r.lower * r.lower < 2);
  CHECK(r.upper * r.upper > 2);
  CHECK(rl.roots()[1].upper - rl.roots()[1].lower >= BigRat(1, 1000));
}

TEST_CASE("sturm count") {
  CHECK(sturm_count(P("x^2 - 2"), BigRat(-10), BigRat(10)) == 2);
  CHECK(sturm_count(P("x^2 + 1"), BigRat(-10), BigRat(10)) == 0);
  CHECK(sturm_count(sqrf(fzy())) == 8);
  CHECK(sturm_count(P("x^2 - 1"), BigRat(-1), BigRat(1)) == 0);
  CHECK(sturm_count(P("x^2 - 1"), BigRat(-1), std::nullopt) == 1);
  CHECK(sturm_count(P("x - 5"), BigRat(0), BigRat(5)) == 0);
}

TEST_CASE("simplest rational") {
  CHECK(simplest_between(BigRat(1, 3), false, BigRat(1, 2), false) == BigRat(2, 5));
  CHECK(simplest_between(BigRat(0), false, BigRat(1), false) == BigRat(1, 2));
  CHECK(simplest_between(BigRat(3, 2), false, BigRat(7, 4), false) == BigRat(5, 3));
  CHECK(simplest_between(BigRat(1, 2), true, BigRat(1), false) == BigRat(1, 2));
  CHECK(simplest_between(BigRat(-7, 2), false, std::nullopt, false) == 0);
  CHECK(simplest_between(std::nullopt, false, BigRat(-7, 2), false) == -4);
  CHECK(simplest_between(BigRat(2), false, std::nullopt, false) == 3);
  CHECK(simplest_between(BigRat(-3, 7), false, BigRat(-2, 5), false) == BigRat(-5, 12));
}

TEST_CASE("sp_one") {
  const auto three = sp_one(P("x^2 - 2"), P("1"));
  REQUIRE(three.size() == 3);
  CHECK(evaluate(P("x^2 - 2"), {three[0]}) > 0);
  CHECK(evaluate(P("x^2 - 2"), {three[1]}) < 0);
  CHECK(evaluate(P("x^2 - 2"), {three[2]}) > 0);

  CHECK(sp_one(P("x"), P("x")) == std::vector<BigRat>{BigRat(-1), BigRat(1)});

  const auto seven = sp_one(hp_zy(), fzy());
  CHECK(seven.size() == 7);
  for (const auto& p : seven) {
    CHECK(p != 1);
    CHECK(p != -1);
    CHECK(evaluate(fzy(), {p}) != 0);
  }
  check_sp_one(hp_zy(), fzy(), Strategy::Simplest);
  check_sp_one(hp_zy(), fzy(), Strategy::Midpoint);

  CHECK(sp_one(P("3"), P("1")) == std::vector<BigRat>{BigRat(0)});
  CHECK(sp_one(P("3"), P("x")).size() == 1);
  CHECK(sp_one(P("3"), P("x"))[0] != 0);
  CHECK(sp_one(P("-3"), P("x"), Strategy::Midpoint).size() == 1);
  CHECK_THROWS_AS(sp_one(MultiPoly(4), P("1")), DomainError);
  CHECK_THROWS_AS(sp_one(P("x"), MultiPoly(4)), DomainError);
  CHECK_THROWS_AS(sp_one(P("x"), P("y")), DomainError);
}

TEST_CASE("sp_one with a filter") {
  const auto pts = sp_one(P("x^2 - 2"), P("1"), Strategy::Simplest, [](const BigRat& q) { return q != 0; });
  REQUIRE(pts.size() == 3);
  CHECK(pts[1] != 0);
  CHECK(pts[1] * pts[1] < 2);
  CHECK_THROWS_AS(sp_one(P("x"), P("1"), Strategy::Simplest, [](const BigRat&) { return false; }),
                  NonGenericSample);
}

TEST_CASE("property: isolation agrees with Sturm counts") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> coef(-65536, 65536);
  std::uniform_int_distribution<int> degree(1, 12);
  for (int it = 0; it < 500; ++it) {
    std::vector<BigInt> c(static_cast<std::size_t>(degree(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    if (c.back() == 0) c.back() = 1;
    if (it % 5 == 0) {
      // Products of rational linear factors exercise exact roots.
      MultiPoly p = from_dense({BigInt(1)});
      for (int k = 0; k < 1 + it % 4; ++k) {
        p *= from_dense({BigInt(static_cast<long>(coef(rng) % 9)), BigInt(1 + (it + k) % 4)});
      }
      c = to_dense(p);
    }
    const MultiPoly s = sqrf(from_dense(c));
    const RootList rl = isolate(s);
    REQUIRE(static_cast<int>(rl.size()) == sturm_count(s));
    for (const auto& r : rl.roots()) {
      if (r.exact) {
        CHECK(evaluate(s, {r.lower}) == 0);
      } else {
        CHECK(sturm_count(s, r.lower, r.upper) == 1);
      }
    }
  }
}

TEST_CASE("property: sp_one contract") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> coef(-20, 20);
  for (int it = 0; it < 100; ++it) {
    std::vector<BigInt> fc(static_cast<std::size_t>(2 + it % 6));
    std::vector<BigInt> gc(static_cast<std::size_t>(1 + it % 4));
    for (auto& x : fc) x = coef(rng);
    for (auto& x : gc) x = coef(rng);
    fc.back() = 1;
    gc.back() = 2;
    const MultiPoly f = from_dense(fc);
    const MultiPoly g = from_dense(gc) * f.pow(it % 2);
    check_sp_one(f, g, Strategy::Simplest);
    check_sp_one(f, g, Strategy::Midpoint);
    CHECK(sp_one(f, g) == sp_one(f, g));
  }
}

TEST_CASE("exact roots next to close irrational roots stay ordered") {
  // (q*x - p)((q*x - p)^2 - 2^-k) puts dyadic interval ends right on the
  // exact root p/q. Sixteen far roots make the root list long enough that
  // sorting does not keep the discovery order.
  MultiPoly far = from_dense({BigInt(1)});
  for (long i = 1; i <= 16; ++i) far *= from_dense({BigInt(-10 * i - 7), BigInt(1)});
  const std::vector<std::pair<long, long>> centers{{-2, 1}, {2, 1}, {-3, 4}, {5, 8}, {0, 1}};
  for (const auto& [num, den] : centers) {
    for (int k = 1; k <= 21; k += 4) {
      const MultiPoly shift = from_dense({BigInt(-num), BigInt(den)});
      const MultiPoly f = far * shift * (shift * shift * from_dense({BigInt(1) << k}) - from_dense({BigInt(1)}));
      check_isolation(f);
      check_sp_one(f, from_dense({BigInt(1)}), Strategy::Simplest);
      check_sp_one(f, from_dense({BigInt(1)}), Strategy::Midpoint);
    }
  }
}
