#include "recpoly.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "hpcad/cancel.hpp"

namespace hpcad::detail {

namespace {

using Coeffs = std::vector<Rec>;

void trim(Rec& a) {
  if (a.rank < 0) return;
  while (!a.coeffs.empty() && a.coeffs.back().is_zero()) a.coeffs.pop_back();
  if (a.coeffs.empty()) {
    a = Rec{};
  } else if (a.coeffs.size() == 1) {
    Rec only = std::move(a.coeffs[0]);
    a = std::move(only);
  }
}

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// a += sign * b, in place.
void accumulate(Rec& a, const Rec& b, int sign) {
  if (b.is_zero()) return;
  if (a.is_zero()) {
    a = sign > 0 ? b : neg(b);
    return;
  }
  if (a.rank < 0 && b.rank < 0) {
    if (sign > 0) {
      a.c += b.c;
    } else {
      a.c -= b.c;
    }
    return;
  }
  if (a.rank > b.rank) {
    accumulate(a.coeffs[0], b, sign);
    return;
  }
  if (b.rank > a.rank) {
    Rec t = sign > 0 ? b : neg(b);
    accumulate(t.coeffs[0], a, 1);
    a = std::move(t);
    return;
  }
  if (a.coeffs.size() < b.coeffs.size()) a.coeffs.resize(b.coeffs.size());
  for (std::size_t k = 0; k < b.coeffs.size(); ++k) accumulate(a.coeffs[k], b.coeffs[k], sign);
  trim(a);
}

// a += b * c
void add_mul(Rec& a, const Rec& b, const Rec& c) {
  if (b.is_zero() || c.is_zero()) return;
  if (b.rank < 0 && c.rank < 0 && a.rank < 0) {
    mpz_addmul(a.c.get_mpz_t(), b.c.get_mpz_t(), c.c.get_mpz_t());
    return;
  }
  accumulate(a, mul(b, c), 1);
}

int deg(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

// Pseudo-remainder: lc(B)^(degA-degB+1) * A = Q * B + R.
Coeffs prem(Coeffs A, const Coeffs& B) {
  const int db = deg(B);
  int e = deg(A) - db + 1;
  if (e <= 0) return A;
  const Rec& lb = B.back();
  while (!A.empty() && deg(A) >= db) {
    CancelScope::poll();
    const int k = deg(A);
    Rec la = std::move(A[k]);
    A.pop_back();
    if (!lb.is_one()) {
      for (auto& x : A) x = mul(lb, x);
    }
    for (int j = 0; j < db; ++j) {
      if (B[j].is_zero()) continue;
      accumulate(A[k - db + j], mul(la, B[j]), -1);
    }
    trim(A);
    --e;
  }
  if (e > 0 && !lb.is_one() && !A.empty()) {
    Rec f = pow(lb, static_cast<unsigned>(e));
    for (auto& x : A) x = mul(f, x);
  }
  return A;
}

Coeffs div_all(const Coeffs& a, const Rec& d) {
  if (d.is_one()) return a;
  Coeffs out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(div_exact(x, d));
  return out;
}

Rec content_of(const Coeffs& c) {
  Rec g;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    g = gcd(g, *it);
    if (g.is_one()) break;
  }
  return g;
}

BigInt max_norm(const Rec& a) {
  if (a.rank < 0) return abs(a.c);
  BigInt m = 0;
  for (const auto& x : a.coeffs) {
    BigInt t = max_norm(x);
    if (t > m) m = std::move(t);
  }
  return m;
}

// a with its main variable set to xi.
Rec eval_main(const Rec& a, const BigInt& xi) {
  if (a.rank < 0) return a;
  Rec acc;
  for (auto it = a.coeffs.rbegin(); it != a.coeffs.rend(); ++it) {
    acc = mul_int(acc, xi);
    accumulate(acc, *it, 1);
  }
  return acc;
}

// Replaces every integer c of a by (c - r) / xi, where r is the symmetric
// residue of c mod xi, and returns the residues.
Rec split_symmetric(Rec& a, const BigInt& xi, const BigInt& half) {
  if (a.rank < 0) {
    Rec r;
    mpz_fdiv_r(r.c.get_mpz_t(), a.c.get_mpz_t(), xi.get_mpz_t());
    if (r.c > half) r.c -= xi;
    a.c -= r.c;
    mpz_divexact(a.c.get_mpz_t(), a.c.get_mpz_t(), xi.get_mpz_t());
    return r;
  }
  Rec r;
  r.rank = a.rank;
  for (auto& x : a.coeffs) r.coeffs.push_back(split_symmetric(x, xi, half));
  trim(r);
  trim(a);
  return r;
}

BigInt integer_content_of(const Rec& a) {
  if (a.rank < 0) return abs(a.c);
  BigInt g = 0;
  for (const auto& x : a.coeffs) {
    const BigInt t = integer_content_of(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

constexpr std::size_t kMaxImageBits = std::size_t(1) << 20;

// Heuristic gcd of two polynomials of equal positive rank, each primitive
// in its main variable: evaluate the main variable at a large integer,
// take the gcd of the images and read the candidate back from its
// xi-adic digits. A candidate dividing both inputs is the gcd.
std::optional<Rec> heuristic_gcd(const Rec& a, const Rec& b) {
  const BigInt na = max_norm(a);
  const BigInt nb = max_norm(b);
  BigInt xi = 2 * (na < nb ? na : nb) + 29;
  const std::size_t d = std::max(a.coeffs.size(), b.coeffs.size());
  for (int attempt = 0; attempt < 6; ++attempt) {
    CancelScope::poll();
    // Images past this size cost more than the remainder sequence.
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * d > kMaxImageBits) return std::nullopt;
    const Rec ea = eval_main(a, xi);
    const Rec eb = eval_main(b, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      Rec gamma = gcd(ea, eb);
      const BigInt half = xi / 2;
      Coeffs digits;
      while (!gamma.is_zero()) digits.push_back(split_symmetric(gamma, xi, half));
      Rec cand = make_rec(a.rank, std::move(digits));
      const BigInt c = integer_content_of(cand);
      if (c > 1) cand = div_exact(cand, Rec(c));
      if (!cand.is_zero() && exact_div(a, cand) && exact_div(b, cand)) return positive(cand);
    }
    const BigInt r = sqrt(sqrt(xi));
    xi = xi * r * 73794 / 27011;
  }
  return std::nullopt;
}


}  // namespace

bool operator==(const Rec& a, const Rec& b) {
  if (a.rank != b.rank) return false;
  if (a.rank < 0) return a.c == b.c;
  return a.coeffs == b.coeffs;
}

Rec make_rec(int rank, std::vector<Rec> coeffs) {
  Rec r;
  r.rank = rank;
  r.coeffs = std::move(coeffs);
  if (rank < 0) {
    assert(r.coeffs.size() <= 1);
    Rec out = r.coeffs.empty() ? Rec{} : std::move(r.coeffs[0]);
    return out;
  }
  trim(r);
  return r;
}

int degree_in(const Rec& a, int rank) {
  return a.rank == rank ? static_cast<int>(a.coeffs.size()) - 1 : (a.is_zero() ? -1 : 0);
}

std::vector<Rec> coeffs_in(const Rec& a, int rank) {
  if (a.is_zero()) return {};
  if (a.rank == rank) return a.coeffs;
  assert(a.rank < rank);
  return {a};
}

const Rec& leading_coeff(const Rec& a) { return a.rank < 0 ? a : a.coeffs.back(); }

Rec add(const Rec& a, const Rec& b) {
  Rec r = a;
  accumulate(r, b, 1);
  return r;
}

Rec sub(const Rec& a, const Rec& b) {
  Rec r = a;
  accumulate(r, b, -1);
  return r;
}

Rec neg(Rec a) {
  if (a.rank < 0) {
    a.c = -a.c;
  } else {
    for (auto& x : a.coeffs) x = neg(std::move(x));
  }
  return a;
}

Rec mul_int(const Rec& a, const BigInt& k) {
  if (sgn(k) == 0 || a.is_zero()) return Rec{};
  if (a.rank < 0) return Rec(a.c * k);
  Rec r;
  r.rank = a.rank;
  r.coeffs.reserve(a.coeffs.size());
  for (const auto& x : a.coeffs) r.coeffs.push_back(mul_int(x, k));
  return r;
}

Rec mul(const Rec& a, const Rec& b) {
  if (a.is_zero() || b.is_zero()) return Rec{};
  if (a.rank < 0) return mul_int(b, a.c);
  if (b.rank < 0) return mul_int(a, b.c);
  if (a.rank < b.rank) return mul(b, a);
  Rec r;
  r.rank = a.rank;
  if (a.rank > b.rank) {
    r.coeffs.reserve(a.coeffs.size());
    for (const auto& x : a.coeffs) r.coeffs.push_back(mul(x, b));
    return r;
  }
  r.coeffs.resize(a.coeffs.size() + b.coeffs.size() - 1);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) add_mul(r.coeffs[i + j], a.coeffs[i], b.coeffs[j]);
  }
  trim(r);
  return r;
}

Rec pow(const Rec& a, unsigned e) {
  Rec result(BigInt(1));
  Rec base = a;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    e >>= 1u;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Rec derivative(const Rec& a, int rank) {
  if (a.rank < rank) return Rec{};
  Rec r;
  r.rank = a.rank;
  if (a.rank > rank) {
    for (const auto& x : a.coeffs) r.coeffs.push_back(derivative(x, rank));
  } else {
    for (std::size_t k = 1; k < a.coeffs.size(); ++k) {
      r.coeffs.push_back(mul_int(a.coeffs[k], BigInt(static_cast<unsigned long>(k))));
    }
  }
  trim(r);
  return r;
}

std::optional<Rec> exact_div(const Rec& a, const Rec& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return Rec{};
  if (b.rank < 0) {
    if (b.c == 1) return a;
    if (a.rank < 0) {
      if (!mpz_divisible_p(a.c.get_mpz_t(), b.c.get_mpz_t())) return std::nullopt;
      Rec q;
      mpz_divexact(q.c.get_mpz_t(), a.c.get_mpz_t(), b.c.get_mpz_t());
      return q;
    }
    Rec r;
    r.rank = a.rank;
    r.coeffs.reserve(a.coeffs.size());
    for (const auto& x : a.coeffs) {
      auto q = exact_div(x, b);
      if (!q) return std::nullopt;
      r.coeffs.push_back(std::move(*q));
    }
    return r;
  }
  if (a.rank < b.rank) return std::nullopt;
  if (a.rank > b.rank) {
    Rec r;
    r.rank = a.rank;
    r.coeffs.reserve(a.coeffs.size());
    for (const auto& x : a.coeffs) {
      auto q = exact_div(x, b);
      if (!q) return std::nullopt;
      r.coeffs.push_back(std::move(*q));
    }
    return r;
  }
  const int da = deg(a.coeffs);
  const int db = deg(b.coeffs);
  if (da < db) return std::nullopt;
  Coeffs rem = a.coeffs;
  Coeffs q(static_cast<std::size_t>(da - db + 1));
  const Rec& lb = b.coeffs.back();
  for (int k = da; k >= db; --k) {
    if (rem[k].is_zero()) continue;
    auto qk = exact_div(rem[k], lb);
    if (!qk) return std::nullopt;
    rem[k] = Rec{};
    for (int j = 0; j < db; ++j) {
      if (b.coeffs[j].is_zero()) continue;
      accumulate(rem[k - db + j], mul(*qk, b.coeffs[j]), -1);
    }
    q[k - db] = std::move(*qk);
  }
  for (int k = 0; k < db; ++k) {
    if (!rem[k].is_zero()) return std::nullopt;
  }
  return make_rec(a.rank, std::move(q));
}

Rec div_exact(const Rec& a, const Rec& b) {
  auto q = exact_div(a, b);
  if (!q) throw Error("internal: inexact polynomial division");
  return std::move(*q);
}

int leading_sign(const Rec& a) {
  const Rec* p = &a;
  while (p->rank >= 0) p = &p->coeffs.back();
  return sgn(p->c);
}

Rec positive(Rec a) { return leading_sign(a) < 0 ? neg(std::move(a)) : a; }

Rec content(const Rec& a) {
  if (a.rank < 0) return Rec(abs(a.c));
  return positive(content_of(a.coeffs));
}

Rec gcd(const Rec& a, const Rec& b) {
  if (a.is_zero()) return positive(b);
  if (b.is_zero()) return positive(a);
  if (a.rank < 0 && b.rank < 0) {
    Rec r;
    mpz_gcd(r.c.get_mpz_t(), a.c.get_mpz_t(), b.c.get_mpz_t());
    return r;
  }
  if (a.rank != b.rank) {
    const Rec& hi = a.rank > b.rank ? a : b;
    const Rec& lo = a.rank > b.rank ? b : a;
    if (lo.rank < 0 && lo.c == 1) return lo;
    return gcd(content(hi), lo);
  }
  const int rank = a.rank;
  const Rec ca = content(a);
  const Rec cb = content(b);
  const Rec d = gcd(ca, cb);
  Coeffs A = div_all(a.coeffs, ca);
  Coeffs B = div_all(b.coeffs, cb);
  if (deg(A) < deg(B)) std::swap(A, B);
  {
    const Rec pa = make_rec(rank, A);
    const Rec pb = make_rec(rank, B);
    if (exact_div(pa, pb)) return positive(mul(d, pb));
    if (auto h = heuristic_gcd(pa, pb)) return positive(mul(d, *h));
  }
  Rec g(BigInt(1));
  Rec h(BigInt(1));
  for (;;) {
    const int delta = deg(A) - deg(B);
    Coeffs R = prem(A, B);
    if (R.empty()) break;
    if (deg(R) == 0) {
      return positive(d);
    }
    A = std::move(B);
    Rec divisor = delta == 0 ? g : mul(g, pow(h, static_cast<unsigned>(delta)));
    B = div_all(R, divisor);
    g = A.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = div_exact(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
    }
  }
  const Rec cB = content_of(B);
  return positive(mul(d, make_rec(rank, div_all(B, cB))));
}

Rec resultant(const Rec& a, const Rec& b, int rank) {
  if (a.is_zero() || b.is_zero()) return Rec{};
  Coeffs A = coeffs_in(a, rank);
  Coeffs B = coeffs_in(b, rank);
  const int da0 = deg(A);
  const int db0 = deg(B);
  if (da0 == 0 && db0 == 0) return Rec(BigInt(1));
  if (da0 == 0) return pow(a, static_cast<unsigned>(db0));
  if (db0 == 0) return pow(b, static_cast<unsigned>(da0));

  const Rec ca = content_of(A);
  const Rec cb = content_of(B);
  A = div_all(A, ca);
  B = div_all(B, cb);
  Rec g(BigInt(1));
  Rec h(BigInt(1));
  int s = 1;
  Rec t = mul(pow(ca, static_cast<unsigned>(db0)), pow(cb, static_cast<unsigned>(da0)));
  if (deg(A) < deg(B)) {
    std::swap(A, B);
    if ((deg(A) & 1) && (deg(B) & 1)) s = -1;
  }
  while (deg(B) > 0) {
    const int delta = deg(A) - deg(B);
    if ((deg(A) & 1) && (deg(B) & 1)) s = -s;
    Coeffs R = prem(A, B);
    if (R.empty()) return Rec{};
    A = std::move(B);
    Rec divisor = delta == 0 ? g : mul(g, pow(h, static_cast<unsigned>(delta)));
    B = div_all(R, divisor);
    g = A.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = div_exact(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
    }
  }
  const int dA = deg(A);
  Rec last = div_exact(pow(B.back(), static_cast<unsigned>(dA)), pow(h, static_cast<unsigned>(dA - 1)));
  Rec r = mul(t, last);
  return s < 0 ? neg(std::move(r)) : r;
}

namespace {

Rec build(const MultiPoly& p, const std::vector<std::size_t>& idx, int rank,
          const std::vector<Var>& rank_to_var) {
  if (idx.empty()) return Rec{};
  if (rank < 0) {
    BigInt sum = 0;
    for (auto i : idx) sum += p.terms()[i].coef;
    return Rec(sum);
  }
  const Var v = rank_to_var[rank];
  std::uint32_t top = 0;
  for (auto i : idx) top = std::max(top, p.terms()[i].exp[v]);
  if (top == 0) return build(p, idx, rank - 1, rank_to_var);
  std::vector<std::vector<std::size_t>> buckets(top + 1);
  for (auto i : idx) buckets[p.terms()[i].exp[v]].push_back(i);
  Coeffs coeffs(top + 1);
  for (std::uint32_t k = 0; k <= top; ++k) coeffs[k] = build(p, buckets[k], rank - 1, rank_to_var);
  return make_rec(rank, std::move(coeffs));
}

void collect(const Rec& r, Exponents& exp, const std::vector<Var>& rank_to_var, std::vector<Term>& out) {
  if (r.rank < 0) {
    if (sgn(r.c) != 0) out.push_back(Term{exp, r.c});
    return;
  }
  const Var v = rank_to_var[r.rank];
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
    if (r.coeffs[k].is_zero()) continue;
    exp[v] = static_cast<std::uint32_t>(k);
    collect(r.coeffs[k], exp, rank_to_var, out);
  }
  exp[v] = 0;
}

}  // namespace

Rec to_rec(const MultiPoly& p, const std::vector<Var>& rank_to_var) {
  std::vector<bool> listed(p.nvars(), false);
  for (auto v : rank_to_var) listed.at(v) = true;
  for (auto v : p.support()) {
    if (!listed[v]) throw DomainError("internal: variable missing from rank map");
  }
  std::vector<std::size_t> idx(p.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return build(p, idx, static_cast<int>(rank_to_var.size()) - 1, rank_to_var);
}

MultiPoly from_rec(const Rec& r, std::size_t nvars, const std::vector<Var>& rank_to_var) {
  std::vector<Term> terms;
  Exponents exp(nvars, 0);
  collect(r, exp, rank_to_var, terms);
  return MultiPoly::from_terms(nvars, std::move(terms));
}

std::vector<Var> natural_ranks(std::size_t n) {
  std::vector<Var> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = i;
  return r;
}

std::vector<Var> ranks_with_top(std::size_t n, Var top) {
  std::vector<Var> r;
  r.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != top) r.push_back(i);
  }
  r.push_back(top);
  return r;
}

}  // namespace hpcad::detail
