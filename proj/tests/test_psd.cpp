#include <random>

#include "doctest.h"
#include "hpcad/corpus.hpp"
#include "hpcad/psd.hpp"
#include "test_support.hpp"

using namespace hpcad;
using namespace hpcad::test;

namespace {

MultiPoly Pn(const std::string& t, std::size_t n) { return P(t).with_nvars(n); }

void check_sound(const MultiPoly& f, const PsdVerdict& v) {
  if (v.psd()) {
    CHECK(!v.witness);
    return;
  }
  REQUIRE(v.witness);
  CHECK(v.witness->size() == f.nvars());
  CHECK(sign_at(f, *v.witness) < 0);
}

// Random trivariate polynomial that is nonnegative about half the time:
// either a sum of squares plus a constant or a plain random polynomial.
MultiPoly random_trivariate(std::mt19937_64& rng, int it) {
  if (it % 2 == 0) return random_poly(rng, 3, 4, 5, 6, 3);
  const MultiPoly a = random_poly(rng, 3, 2, 3, 3, 3);
  const MultiPoly b = random_poly(rng, 3, 2, 3, 3, 3);
  const long shift = std::uniform_int_distribution<long>(-2, 2)(rng);
  return a * a + b * b + MultiPoly::constant(3, BigInt(shift));
}

}  // namespace

TEST_CASE("psd_by_sample") {
  CHECK(psd_by_sample(Pn("x^2 + y^2", 2)).psd());
  const MultiPoly f = Pn("x^2 - 1", 1);
  const PsdVerdict v = psd_by_sample(f);
  REQUIRE(!v.psd());
  check_sound(f, v);
  CHECK((*v.witness)[0] > -1);
  CHECK((*v.witness)[0] < 1);
  CHECK(psd_by_sample(MultiPoly(3)).psd());
  CHECK(psd_by_sample(Pn("7", 2)).psd());
  check_sound(Pn("-7", 2), psd_by_sample(Pn("-7", 2)));
  CHECK(psd_by_sample(corpus_f(5).poly).psd());
  CHECK(psd_by_sample(Pn("x^2*(y - 1)^2", 2)).psd());
}

TEST_CASE("semi_def") {
  CHECK(semi_def(Pn("-x^2", 1)).classification == SemiDefClass::NonPositive);
  const SemiDefSign lin = semi_def(Pn("x", 1));
  CHECK(lin.classification == SemiDefClass::Indefinite);
  REQUIRE(lin.positive_witness);
  REQUIRE(lin.negative_witness);
  CHECK(*lin.positive_witness == SamplePoint{BigRat(1)});
  CHECK(*lin.negative_witness == SamplePoint{BigRat(-1)});
  const MultiPoly circle = Pn("x^2 + y^2 - 1", 2);
  const SemiDefSign c = semi_def(circle);
  CHECK(c.classification == SemiDefClass::Indefinite);
  CHECK(sign_at(circle, *c.positive_witness) > 0);
  CHECK(sign_at(circle, *c.negative_witness) < 0);
  CHECK(semi_def(MultiPoly(2)).classification == SemiDefClass::IdenticallyZero);
  CHECK(semi_def(Pn("x^2 + y^2", 2)).classification == SemiDefClass::NonNegative);
}

TEST_CASE("proineq_base") {
  CHECK(proineq_base(Pn("x^4 - 2*x^2 + 1", 1)).psd());
  CHECK(proineq_base(Pn("x^2 + y^2 - 2*x*y", 2)).psd());
  // f(0, y, z) of Example 1 is negative at the origin.
  const MultiPoly f = example1().with_nvars(3);
  const MultiPoly slice = substitute(f, {{X, BigRat(0)}}).poly.remap({std::nullopt, 0, 1}, 2);
  const PsdVerdict v = proineq_base(slice);
  CHECK(!v.psd());
  check_sound(slice, v);
  CHECK(sign_at(f, {BigRat(0), BigRat(0), BigRat(0)}) < 0);
  // Low level in a bigger ring: the witness keeps the ring's dimension.
  const MultiPoly low = Pn("x*y", 4);
  const PsdVerdict lv = proineq_base(low);
  check_sound(low, lv);
  CHECK_THROWS_AS(proineq_base(f), DomainError);
}

TEST_CASE("psd_hp_two on the F, G and B families") {
  const MultiPoly f5 = corpus_f(5).poly;
  const PsdVerdict vf = psd_hp_two(f5);
  CHECK(vf.psd());
  CHECK(vf.trace == PsdTrace::NpRecursion);

  const MultiPoly g5 = corpus_g(5).poly;
  const PsdVerdict vg = psd_hp_two(g5);
  CHECK(!vg.psd());
  check_sound(g5, vg);

  const MultiPoly b1 = corpus_b(1).poly;
  CHECK(b1 == f5);
  CHECK(psd_hp_two(b1).psd());

  CHECK(psd_hp_two(corpus_f(4).poly).psd());
  const MultiPoly f3 = corpus_f(3).poly;
  check_sound(f3, psd_hp_two(f3));
  CHECK(!psd_hp_two(f3).psd());
}

TEST_CASE("psd_hp_two small cases") {
  CHECK(psd_hp_two(MultiPoly(3)).psd());
  CHECK(psd_hp_two(Pn("5", 3)).psd());
  check_sound(Pn("-5", 3), psd_hp_two(Pn("-5", 3)));
  const MultiPoly neg_square = Pn("-(x*y - z)^2", 3);
  check_sound(neg_square, psd_hp_two(neg_square));
  CHECK(psd_hp_two(Pn("(x*y - z)^2*(x^2 + 1)", 3)).psd());
  // Odd part negative exactly where the even part vanishes nearby.
  const MultiPoly g = Pn("(x - y)^2*(x^2 + y^2 + z^2 - 1)", 3);
  check_sound(g, psd_hp_two(g));
  CHECK(psd_hp_two(Pn("x^2 + y^2 + z^2", 3)).psd());
  CHECK(psd_hp_two(Pn("x^2*y^2 + y^2*z^2 + z^2*w^2 + 1", 4)).psd());
  const MultiPoly motzkin = Pn("x^4*y^2 + x^2*y^4 - 3*x^2*y^2*z^2 + z^6", 3);
  CHECK(psd_hp_two(motzkin).psd());
  const MultiPoly shifted = motzkin - Pn("1", 3);
  check_sound(shifted, psd_hp_two(shifted));
  CHECK(!psd_hp_two(shifted).psd());
}

TEST_CASE("cyclic rotation leaves the verdict unchanged") {
  for (std::size_t n = 3; n <= 5; ++n) {
    for (const auto& f : {corpus_f(n).poly, corpus_g(n).poly}) {
      std::vector<std::optional<Var>> rot;
      for (std::size_t i = 0; i < n; ++i) rot.push_back((i + 1) % n);
      const MultiPoly r = f.remap(rot, n);
      const PsdVerdict a = psd_hp_two(f);
      const PsdVerdict b = psd_hp_two(r);
      CHECK(a.verdict == b.verdict);
      check_sound(r, b);
    }
  }
}

TEST_CASE("property: psd_hp_two agrees with psd_by_sample") {
  std::mt19937_64 rng(51);
  int psd_count = 0;
  for (int it = 0; it < 50; ++it) {
    const MultiPoly f = random_trivariate(rng, it);
    const PsdVerdict a = psd_hp_two(f);
    const PsdVerdict b = psd_by_sample(f);
    CHECK(a.verdict == b.verdict);
    check_sound(f, a);
    check_sound(f, b);
    psd_count += a.psd() ? 1 : 0;
  }
  CHECK(psd_count >= 5);
  CHECK(psd_count <= 45);
}

TEST_CASE("property: psd_by_sample agrees with a grid minimum") {
  std::mt19937_64 rng(52);
  for (int it = 0; it < 40; ++it) {
    MultiPoly f = random_poly(rng, 2, 4, 5, 6, 2);
    if (it % 2 == 1) f = f * f - MultiPoly::constant(2, BigInt(it % 4 == 1 ? 0 : 1));
    bool grid_negative = false;
    for (int i = 0; i < 100 && !grid_negative; ++i) {
      for (int j = 0; j < 100 && !grid_negative; ++j) {
        const SamplePoint p{BigRat(-5) + BigRat(10 * i, 99), BigRat(-5) + BigRat(10 * j, 99)};
        grid_negative = sign_at(f, p) < 0;
      }
    }
    const PsdVerdict v = psd_by_sample(f);
    check_sound(f, v);
    if (grid_negative) CHECK(!v.psd());
  }
}

TEST_CASE("property: squared factors do not change the verdict") {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 50; ++it) {
    const MultiPoly h = random_trivariate(rng, it);
    const MultiPoly g = random_poly(rng, 3, 2, 3, 4, 3);
    if (g.is_zero() || h.is_zero()) continue;
    const MultiPoly f = g * g * h;
    const PsdVerdict a = psd_hp_two(f);
    CHECK(a.verdict == psd_hp_two(h).verdict);
    check_sound(f, a);
  }
}
