#include "hpcad/realroots.hpp"

#include <algorithm>

namespace hpcad {

namespace {

using UPoly = std::vector<BigInt>;

constexpr int kMaxRejections = 64;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

void make_primitive(UPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

// Sign of p(num/den), den > 0, via the homogenized form.
int sign_at_rat(const UPoly& p, const BigRat& x) {
  if (p.empty()) return 0;
  const BigInt& num = x.get_num();
  const BigInt& den = x.get_den();
  BigInt acc = p.back();
  BigInt dpow = 1;
  for (int i = deg(p) - 1; i >= 0; --i) {
    dpow *= den;
    acc = acc * num + p[i] * dpow;
  }
  return sgn(acc);
}

int sign_at_infinity(const UPoly& p, int direction) {
  if (p.empty()) return 0;
  const int s = sgn(p.back());
  return (direction < 0 && deg(p) % 2 == 1) ? -s : s;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

// p(x + 1), in place.
void taylor_shift1(UPoly& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) p[j] += p[j + 1];
  }
}

int variations(const UPoly& p) {
  int v = 0;
  int last = 0;
  for (const auto& c : p) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Descartes bound on the number of roots of q in the open interval (0, 1).
int descartes_01(const UPoly& q) {
  UPoly r(q.rbegin(), q.rend());
  taylor_shift1(r);
  return variations(r);
}

// Remainder of a by b, scaled by a positive constant.
UPoly positive_prem(UPoly a, const UPoly& b) {
  const int db = deg(b);
  const BigInt& lb = b.back();
  int steps = 0;
  while (deg(a) >= db && !a.empty()) {
    const BigInt la = a.back();
    const int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
    ++steps;
  }
  // Each step multiplied by lb; fix the sign so the total factor is positive.
  if (lb < 0 && steps % 2 == 1) {
    for (auto& c : a) c = -c;
  }
  return a;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p};
  UPoly d = derivative(p);
  if (d.empty()) return seq;
  seq.push_back(d);
  while (true) {
    UPoly r = positive_prem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    make_primitive(r);
    seq.push_back(std::move(r));
  }
  return seq;
}

int sign_variations_at(const std::vector<UPoly>& seq, const std::optional<BigRat>& x, int direction) {
  int v = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int sg = x ? sign_at_rat(s, *x) : sign_at_infinity(s, direction);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++v;
    last = sg;
  }
  return v;
}

UPoly squarefree(const UPoly& p) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0) terms.push_back(Term{Exponents{static_cast<std::uint32_t>(i)}, p[i]});
  }
  const MultiPoly s = sqrf(MultiPoly::from_terms(1, std::move(terms)));
  return to_dense(s);
}

// Smallest power of two not below the Cauchy bound of p.
unsigned root_bound_exponent(const UPoly& p) {
  BigInt m = 0;
  for (int i = 0; i < deg(p); ++i) m = std::max(m, BigInt(abs(p[i])));
  BigInt bound = 1 + (m + abs(p.back()) - 1) / abs(p.back());
  unsigned e = 0;
  while (BigInt(1) << e < bound) ++e;
  return e;
}

BigInt ceil_cauchy(const UPoly& p) {
  if (deg(p) < 1) return 0;
  BigInt m = 0;
  for (int i = 0; i < deg(p); ++i) m = std::max(m, BigInt(abs(p[i])));
  return 1 + (m + abs(p.back()) - 1) / abs(p.back());
}

BigRat scaled(const BigInt& c, unsigned k, unsigned e, int sign) {
  BigRat r(c << e, BigInt(1) << k);
  r.canonicalize();
  return sign > 0 ? r : BigRat(-r);
}

// Roots of p on the side given by `sign`, with p(0) != 0.
void half_line_roots(const UPoly& p, int sign, unsigned e, std::vector<IsolatingInterval>& out) {
  struct Node {
    UPoly q;
    unsigned k;
    BigInt c;
  };
  UPoly q0(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    q0[i] = p[i] << static_cast<mp_bitcnt_t>(e * i);
    if (sign < 0 && i % 2 == 1) q0[i] = -q0[i];
  }
  make_primitive(q0);
  std::vector<Node> stack;
  stack.push_back(Node{std::move(q0), 0, 0});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    UPoly& q = node.q;
    while (!q.empty() && q.front() == 0) q.erase(q.begin());
    if (deg(q) < 1) continue;
    const int v = descartes_01(q);
    if (v == 0) continue;
    if (v == 1) {
      BigRat a = scaled(node.c, node.k, e, sign);
      BigRat b = scaled(node.c + 1, node.k, e, sign);
      if (sign < 0) std::swap(a, b);
      out.push_back(IsolatingInterval{a, b, false});
      continue;
    }
    const int d = deg(q);
    UPoly left(q.size());
    for (int i = 0; i <= d; ++i) left[i] = q[i] << static_cast<mp_bitcnt_t>(d - i);
    BigInt at_one = 0;
    for (const auto& c : left) at_one += c;
    if (at_one == 0) {
      const BigRat r = scaled(2 * node.c + 1, node.k + 1, e, sign);
      out.push_back(IsolatingInterval{r, r, true});
    }
    UPoly right = left;
    taylor_shift1(right);
    make_primitive(left);
    make_primitive(right);
    stack.push_back(Node{std::move(right), node.k + 1, 2 * node.c + 1});
    stack.push_back(Node{std::move(left), node.k + 1, 2 * node.c});
  }
}

}  // namespace

std::vector<BigInt> to_dense(const MultiPoly& u) {
  const auto v = univariate_var(u);
  std::vector<BigInt> c(static_cast<std::size_t>(v ? u.degree(*v) + 1 : (u.is_zero() ? 0 : 1)), BigInt(0));
  for (const auto& t : u.terms()) c[v ? t.exp[*v] : 0] += t.coef;
  return c;
}

std::optional<Var> univariate_var(const MultiPoly& u) {
  const auto s = u.support();
  if (s.size() > 1) throw DomainError("expected a univariate polynomial");
  if (s.empty()) return std::nullopt;
  return s.front();
}

RootList::RootList(std::vector<BigInt> target, std::vector<IsolatingInterval> roots)
    : target_(std::move(target)), roots_(std::move(roots)) {}

void RootList::bisect(std::size_t i) {
  IsolatingInterval& r = roots_.at(i);
  if (r.exact) return;
  const BigRat mid = (r.lower + r.upper) / 2;
  const int sm = sign_at_rat(target_, mid);
  if (sm == 0) {
    r = IsolatingInterval{mid, mid, true};
    return;
  }
  int slo = sign_at_rat(target_, r.lower);
  if (slo == 0) slo = sign_at_rat(derivative(target_), r.lower);
  if (sm == slo) {
    r.lower = mid;
  } else {
    r.upper = mid;
  }
}

RootList RootList::refined(std::size_t i, const BigRat& width) const {
  RootList out = *this;
  while (!out.roots_.at(i).exact && out.roots_[i].upper - out.roots_[i].lower >= width) out.bisect(i);
  return out;
}

RootList isolate_dense(const std::vector<BigInt>& coeffs) {
  UPoly p = coeffs;
  trim(p);
  if (p.empty()) throw DomainError("cannot isolate the roots of the zero polynomial");
  if (deg(p) < 1) return RootList(UPoly{BigInt(1)}, {});
  p = squarefree(p);
  std::vector<IsolatingInterval> roots;
  UPoly q = p;
  if (q.front() == 0) {
    roots.push_back(IsolatingInterval{BigRat(0), BigRat(0), true});
    q.erase(q.begin());
  }
  if (deg(q) >= 1) {
    const unsigned e = root_bound_exponent(q);
    half_line_roots(q, 1, e, roots);
    half_line_roots(q, -1, e, roots);
  }
  // An exact root can sit on the lower end of the next open interval.
  std::sort(roots.begin(), roots.end(), [](const IsolatingInterval& a, const IsolatingInterval& b) {
    if (a.lower != b.lower) return a.lower < b.lower;
    return a.exact && !b.exact;
  });
  return RootList(std::move(p), std::move(roots));
}

RootList isolate(const MultiPoly& u) { return isolate_dense(to_dense(u)); }

int sturm_count(const MultiPoly& u, const std::optional<BigRat>& lo, const std::optional<BigRat>& hi) {
  UPoly p = to_dense(u);
  trim(p);
  if (p.empty()) throw DomainError("sturm_count of the zero polynomial");
  if (deg(p) < 1) return 0;
  const auto seq = sturm_sequence(p);
  int n = sign_variations_at(seq, lo, -1) - sign_variations_at(seq, hi, 1);
  if (hi && sign_at_rat(p, *hi) == 0) --n;
  return n;
}

std::string to_string(Strategy s) { return s == Strategy::Simplest ? "simplest" : "midpoint"; }

std::optional<Strategy> parse_strategy(const std::string& name) {
  if (name == "simplest") return Strategy::Simplest;
  if (name == "midpoint") return Strategy::Midpoint;
  return std::nullopt;
}

BigRat simplest_between(const std::optional<BigRat>& lo, bool lo_closed, const std::optional<BigRat>& hi,
                        bool hi_closed) {
  // Smallest and largest integers in the region.
  std::optional<BigInt> first;
  std::optional<BigInt> last;
  if (lo) {
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
    if (!lo_closed && BigRat(c) == *lo) c += 1;
    first = c;
  }
  if (hi) {
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
    if (!hi_closed && BigRat(f) == *hi) f -= 1;
    last = f;
  }
  if (!first || !last || *first <= *last) {
    if ((!first || *first <= 0) && (!last || *last >= 0)) return BigRat(0);
    if (first && *first > 0) return BigRat(*first);
    return BigRat(*last);
  }
  // No integer inside: both bounds lie in (fl, fl + 1].
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
  const BigRat a = *lo - fl;
  const BigRat b = *hi - fl;
  std::optional<BigRat> inv_hi;
  if (a != 0) inv_hi = BigRat(1) / a;
  const BigRat r = simplest_between(BigRat(1) / b, hi_closed, inv_hi, lo_closed);
  return BigRat(fl) + BigRat(1) / r;
}

std::vector<BigRat> sp_one(const MultiPoly& f, const MultiPoly& g, Strategy strategy, const SampleFilter& accept) {
  if (f.is_zero() || g.is_zero()) throw DomainError("sp_one needs nonzero polynomials");
  const auto vf = univariate_var(f);
  const auto vg = univariate_var(g);
  if (vf && vg && *vf != *vg) throw DomainError("sp_one needs polynomials in the same variable");
  const UPoly guard = to_dense(g);
  RootList rl = isolate(f);
  const BigInt outer = ceil_cauchy(rl.target()) + 1;
  const std::size_t k = rl.size();

  struct Region {
    std::optional<BigRat> lo;
    bool lo_closed = false;
    std::optional<BigRat> hi;
    bool hi_closed = false;
  };

  auto pick = [&](const Region& r) -> BigRat {
    if (strategy == Strategy::Simplest) return simplest_between(r.lo, r.lo_closed, r.hi, r.hi_closed);
    if (r.lo && r.hi) return (*r.lo + *r.hi) / 2;
    if (r.hi) return std::min(BigRat(k == 0 ? BigInt(-1) : BigInt(-outer)), BigRat(*r.hi - 1));
    if (r.lo) return std::max(BigRat(k == 0 ? BigInt(1) : outer), BigRat(*r.lo + 1));
    return BigRat(0);
  };

  auto empty = [](const Region& r) {
    return r.lo && r.hi && (*r.lo > *r.hi || (*r.lo == *r.hi && !(r.lo_closed && r.hi_closed)));
  };

  std::vector<BigRat> out;
  for (std::size_t gap = 0; gap <= k; ++gap) {
    // Points already rejected in this cell cut the region down further.
    Region cut;
    auto region = [&] {
      while (true) {
        const auto& roots = rl.roots();
        Region r = cut;
        if (gap > 0) {
          const BigRat& a = roots[gap - 1].upper;
          const bool closed = !roots[gap - 1].exact;
          if (!r.lo || a > *r.lo) {
            r.lo = a;
            r.lo_closed = closed;
          } else if (a == *r.lo) {
            r.lo_closed = r.lo_closed && closed;
          }
        }
        if (gap < k) {
          const BigRat& b = roots[gap].lower;
          const bool closed = !roots[gap].exact;
          if (!r.hi || b < *r.hi) {
            r.hi = b;
            r.hi_closed = closed;
          } else if (b == *r.hi) {
            r.hi_closed = r.hi_closed && closed;
          }
        }
        if (!empty(r)) return r;
        if (gap > 0) rl.bisect(gap - 1);
        if (gap < k) rl.bisect(gap);
      }
    };
    Region r = region();
    BigRat s = pick(r);
    int rejections = 0;
    while (true) {
      const bool guard_ok = sign_at_rat(guard, s) != 0;
      if (guard_ok && (!accept || accept(s))) break;
      if (guard_ok && ++rejections > kMaxRejections) {
        throw NonGenericSample("no generic sample point found in cell after " + std::to_string(kMaxRejections) +
                               " attempts");
      }
      if (!r.hi || s < *r.hi) {
        cut.lo = s;
        cut.lo_closed = false;
      } else {
        cut.hi = s;
        cut.hi_closed = false;
      }
      r = region();
      s = pick(r);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace hpcad
