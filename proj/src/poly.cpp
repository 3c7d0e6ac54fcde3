#include "hpcad/poly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <utility>

#include "recpoly.hpp"

namespace hpcad {

// ---------------------------------------------------------------------------
// VarOrder

VarOrder::VarOrder(std::vector<std::string> innermost_first) : names_(std::move(innermost_first)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw DomainError("empty variable name");
    if (!seen.insert(n).second) throw DomainError("duplicate variable name '" + n + "'");
  }
}

VarOrder VarOrder::from_outermost_first(std::vector<std::string> names) {
  std::reverse(names.begin(), names.end());
  return VarOrder(std::move(names));
}

VarOrder VarOrder::standard(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return VarOrder(std::move(names));
}

std::optional<Var> VarOrder::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> VarOrder::outermost_first() const {
  return {names_.rbegin(), names_.rend()};
}

// ---------------------------------------------------------------------------
// MultiPoly

int compare_grlex(const Exponents& a, const Exponents& b) {
  std::uint64_t da = 0;
  std::uint64_t db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

MultiPoly MultiPoly::constant(std::size_t nvars, const BigInt& c) {
  MultiPoly p(nvars);
  if (sgn(c) != 0) p.terms_.push_back(Term{Exponents(nvars, 0), c});
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, Var v, std::uint32_t power) {
  if (v >= nvars) throw DomainError("variable index out of range");
  MultiPoly p(nvars);
  Exponents e(nvars, 0);
  e[v] = power;
  p.terms_.push_back(Term{std::move(e), BigInt(1)});
  return p;
}

MultiPoly MultiPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exp.size() != nvars) throw DomainError("exponent vector length mismatch");
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare_grlex(a.exp, b.exp) > 0; });
  MultiPoly p(nvars);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coef += t.coef;
      if (sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
    } else if (sgn(t.coef) != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(), [](auto e) { return e == 0; });
}

BigInt MultiPoly::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.empty() ? BigInt(0) : terms_[0].coef;
}

int MultiPoly::degree(Var v) const {
  if (terms_.empty()) return -1;
  if (v >= nvars_) return 0;
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp[v]);
  return static_cast<int>(d);
}

std::uint32_t MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : std::accumulate(terms_[0].exp.begin(), terms_[0].exp.end(), 0u);
}

std::size_t MultiPoly::level() const {
  std::size_t lv = 0;
  for (const auto& t : terms_) {
    for (std::size_t i = t.exp.size(); i > lv; --i) {
      if (t.exp[i - 1] > 0) {
        lv = i;
        break;
      }
    }
  }
  return lv;
}

std::vector<Var> MultiPoly::support() const {
  std::vector<bool> used(nvars_, false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exp[i] > 0) used[i] = true;
    }
  }
  std::vector<Var> out;
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (used[i]) out.push_back(i);
  }
  return out;
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.front();
}

int MultiPoly::leading_sign() const { return terms_.empty() ? 0 : sgn(terms_.front().coef); }

std::size_t MultiPoly::hash() const {
  std::size_t h = std::hash<std::size_t>{}(nvars_);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& t : terms_) {
    for (auto e : t.exp) mix(e);
    mix(static_cast<std::size_t>(mpz_get_si(t.coef.get_mpz_t())));
    mix(mpz_size(t.coef.get_mpz_t()));
  }
  return h;
}

void MultiPoly::check_same_ring(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw DomainError("polynomials live in rings with different variable counts");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = compare_grlex(a[i].exp, b[j].exp);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coef = -out.back().coef;
    } else {
      BigInt s = sign > 0 ? BigInt(a[i].coef + b[j].coef) : BigInt(a[i].coef - b[j].coef);
      if (sgn(s) != 0) out.push_back(Term{a[i].exp, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same_ring(o);
  terms_ = merge_terms(terms_, o.terms_, 1);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same_ring(o);
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same_ring(b);
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.nvars());
  if (a.size() * b.size() > 4096) {
    const auto ranks = detail::natural_ranks(a.nvars());
    return detail::from_rec(detail::mul(detail::to_rec(a, ranks), detail::to_rec(b, ranks)), a.nvars(), ranks);
  }
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      Exponents e(a.nvars());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = s.exp[k] + t.exp[k];
      terms.push_back(Term{std::move(e), s.coef * t.coef});
    }
  }
  return MultiPoly::from_terms(a.nvars(), std::move(terms));
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exp != o.terms_[i].exp || terms_[i].coef != o.terms_[i].coef) return false;
  }
  return true;
}

MultiPoly MultiPoly::scaled(const BigInt& k) const {
  if (sgn(k) == 0) return MultiPoly(nvars_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coef *= k;
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(nvars_, BigInt(1));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::with_nvars(std::size_t n) const {
  if (n < nvars_ && level() > n) throw DomainError("cannot drop a variable that occurs");
  MultiPoly r(n);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(n, 0);
    for (std::size_t i = 0; i < std::min(n, nvars_); ++i) e[i] = t.exp[i];
    r.terms_.push_back(Term{std::move(e), t.coef});
  }
  // Canonical order is preserved: only trailing zero exponents change.
  return r;
}

MultiPoly MultiPoly::remap(const std::vector<std::optional<Var>>& map, std::size_t nvars) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exp[i] == 0) continue;
      if (i >= map.size() || !map[i]) throw DomainError("remap drops an occurring variable");
      e.at(*map[i]) += t.exp[i];
    }
    terms.push_back(Term{std::move(e), t.coef});
  }
  return from_terms(nvars, std::move(terms));
}

bool canonical_less(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) return a.nvars() < b.nvars();
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = compare_grlex(a.terms()[i].exp, b.terms()[i].exp);
    if (c != 0) return c < 0;
    const int d = cmp(a.terms()[i].coef, b.terms()[i].coef);
    if (d != 0) return d < 0;
  }
  return a.size() < b.size();
}

// ---------------------------------------------------------------------------
// Algebra

MultiPoly coefficient(const MultiPoly& f, Var v, std::uint32_t k) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    if (t.exp.at(v) != k) continue;
    Term c = t;
    c.exp[v] = 0;
    terms.push_back(std::move(c));
  }
  return MultiPoly::from_terms(f.nvars(), std::move(terms));
}

MultiPoly lc(const MultiPoly& f, Var v) {
  if (f.is_zero()) throw DomainError("leading coefficient of the zero polynomial");
  return coefficient(f, v, static_cast<std::uint32_t>(f.degree(v)));
}

MultiPoly derivative(const MultiPoly& f, Var v) {
  if (v >= f.nvars()) throw DomainError("variable index out of range");
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    if (t.exp[v] == 0) continue;
    Term d = t;
    d.coef *= t.exp[v];
    d.exp[v] -= 1;
    terms.push_back(std::move(d));
  }
  return MultiPoly::from_terms(f.nvars(), std::move(terms));
}

BigInt integer_content(const MultiPoly& f) {
  BigInt g = 0;
  for (const auto& t : f.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

MultiPoly normalize(const MultiPoly& f) {
  if (f.is_zero()) return f;
  BigInt c = integer_content(f);
  if (f.leading_sign() < 0) c = -c;
  if (c == 1) return f;
  std::vector<Term> terms = f.terms();
  for (auto& t : terms) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
  return MultiPoly::from_terms(f.nvars(), std::move(terms));
}

MultiPoly content(const MultiPoly& f, Var v) {
  if (f.is_zero()) throw DomainError("content of the zero polynomial");
  if (v >= f.nvars()) throw DomainError("variable index out of range");
  const auto ranks = detail::ranks_with_top(f.nvars(), v);
  const detail::Rec r = detail::to_rec(f, ranks);
  const int top = static_cast<int>(f.nvars()) - 1;
  detail::Rec c = r.rank == top ? detail::content(r) : detail::positive(r);
  MultiPoly out = detail::from_rec(c, f.nvars(), ranks);
  return out.leading_sign() < 0 ? -out : out;
}

MultiPoly primitive_part(const MultiPoly& f, Var v) {
  const MultiPoly c = content(f, v);
  auto q = exact_divide(f, c);
  if (!q) throw Error("internal: content does not divide");
  return *q;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  if (f.nvars() != g.nvars()) throw DomainError("polynomials live in rings with different variable counts");
  if (g.is_constant()) {
    const BigInt c = g.constant_value();
    std::vector<Term> terms = f.terms();
    for (auto& t : terms) {
      if (!mpz_divisible_p(t.coef.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
      mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
    }
    return MultiPoly::from_terms(f.nvars(), std::move(terms));
  }
  const auto ranks = detail::natural_ranks(f.nvars());
  auto q = detail::exact_div(detail::to_rec(f, ranks), detail::to_rec(g, ranks));
  if (!q) return std::nullopt;
  return detail::from_rec(*q, f.nvars(), ranks);
}

bool divides(const MultiPoly& g, const MultiPoly& f) { return exact_divide(f, g).has_value(); }

MultiPoly gcd_multi(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero() && g.is_zero()) throw DomainError("gcd of two zero polynomials");
  if (f.nvars() != g.nvars()) throw DomainError("polynomials live in rings with different variable counts");
  if (f.is_zero()) return normalize(g);
  if (g.is_zero()) return normalize(f);
  if (f == g) return normalize(f);
  const auto ranks = detail::natural_ranks(f.nvars());
  const detail::Rec r = detail::gcd(detail::to_rec(f, ranks), detail::to_rec(g, ranks));
  return normalize(detail::from_rec(r, f.nvars(), ranks));
}

MultiPoly resultant_general(const MultiPoly& f, const MultiPoly& g, Var v) {
  if (f.nvars() != g.nvars()) throw DomainError("polynomials live in rings with different variable counts");
  if (v >= f.nvars()) throw DomainError("variable index out of range");
  const auto ranks = detail::ranks_with_top(f.nvars(), v);
  const int top = static_cast<int>(f.nvars()) - 1;
  const detail::Rec r = detail::resultant(detail::to_rec(f, ranks), detail::to_rec(g, ranks), top);
  return detail::from_rec(r, f.nvars(), ranks);
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, Var v) {
  if (f.degree(v) < 1 || g.degree(v) < 1) {
    throw DomainError("resultant requires positive degree in the eliminated variable");
  }
  return resultant_general(f, g, v);
}

MultiPoly discriminant(const MultiPoly& f, Var v) {
  const int d = f.degree(v);
  if (d < 1) throw DomainError("discriminant requires positive degree");
  if (d == 1) return MultiPoly::constant(f.nvars(), BigInt(1));
  const MultiPoly r = resultant_general(f, derivative(f, v), v);
  auto q = exact_divide(r, lc(f, v));
  if (!q) throw Error("internal: leading coefficient does not divide the resultant");
  const long s = static_cast<long>(d) * (d - 1) / 2;
  return (s % 2 == 0) ? *q : -*q;
}

namespace {

detail::Rec sqrf_rec(const detail::Rec& a) {
  if (a.rank < 0) return detail::Rec(BigInt(1));
  const detail::Rec c = detail::content(a);
  const detail::Rec p = detail::div_exact(a, c);
  const detail::Rec dp = detail::derivative(p, a.rank);
  const detail::Rec g = detail::gcd(p, dp);
  return detail::mul(sqrf_rec(c), detail::div_exact(p, g));
}

void yun_rec(const detail::Rec& a, std::vector<std::pair<detail::Rec, unsigned>>& out) {
  if (a.rank < 0) return;
  const int r = a.rank;
  const detail::Rec c = detail::content(a);
  yun_rec(c, out);
  const detail::Rec p = detail::div_exact(a, c);
  const detail::Rec dp = detail::derivative(p, r);
  const detail::Rec g = detail::gcd(p, dp);
  detail::Rec C = detail::div_exact(p, g);
  detail::Rec D = detail::sub(detail::div_exact(dp, g), detail::derivative(C, r));
  for (unsigned i = 1; detail::degree_in(C, r) > 0; ++i) {
    detail::Rec A = detail::gcd(C, D);
    if (detail::degree_in(A, r) > 0) out.emplace_back(A, i);
    C = detail::div_exact(C, A);
    D = detail::sub(detail::div_exact(D, A), detail::derivative(C, r));
  }
}

}  // namespace

MultiPoly sqrf(const MultiPoly& f) {
  if (f.is_zero()) throw DomainError("squarefree part of the zero polynomial");
  if (f.is_constant()) return MultiPoly::constant(f.nvars(), BigInt(1));
  const auto ranks = detail::natural_ranks(f.nvars());
  return normalize(detail::from_rec(sqrf_rec(detail::to_rec(f, ranks)), f.nvars(), ranks));
}

std::vector<MultiPoly> SqrfParts::odd_parts() const {
  std::vector<MultiPoly> out;
  for (const auto& p : parts) {
    if (p.multiplicity % 2 == 1) out.push_back(p.poly);
  }
  return out;
}

std::vector<MultiPoly> SqrfParts::even_parts() const {
  std::vector<MultiPoly> out;
  for (const auto& p : parts) {
    if (p.multiplicity % 2 == 0) out.push_back(p.poly);
  }
  return out;
}

MultiPoly SqrfParts::reconstruct(std::size_t nvars) const {
  MultiPoly r = MultiPoly::constant(nvars, sign < 0 ? BigInt(-integer_content) : integer_content);
  for (const auto& p : parts) r *= p.poly.pow(p.multiplicity);
  return r;
}

SqrfParts sqrf_parts(const MultiPoly& f) {
  if (f.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
  SqrfParts out;
  out.sign = f.leading_sign();
  out.integer_content = integer_content(f);
  if (f.is_constant()) return out;
  const auto ranks = detail::natural_ranks(f.nvars());
  std::vector<std::pair<detail::Rec, unsigned>> raw;
  yun_rec(detail::to_rec(f, ranks), raw);
  for (auto& [rec, mult] : raw) {
    out.parts.push_back(SqrfPart{normalize(detail::from_rec(rec, f.nvars(), ranks)), mult});
  }
  std::sort(out.parts.begin(), out.parts.end(), [](const SqrfPart& a, const SqrfPart& b) {
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    return canonical_less(a.poly, b.poly);
  });
  return out;
}

std::vector<MultiPoly> coprime_basis(const std::vector<MultiPoly>& polys) {
  // Insert one input at a time. For squarefree p and a basis member b with
  // g = gcd(p, b), the pieces g, b/g and p/g are pairwise coprime.
  std::vector<MultiPoly> basis;
  for (const auto& p : polys) {
    if (p.is_zero()) throw DomainError("coprime basis of the zero polynomial");
    if (p.is_constant()) continue;
    MultiPoly rest = normalize(p);
    std::vector<MultiPoly> next;
    for (auto& b : basis) {
      if (rest.is_constant()) {
        next.push_back(std::move(b));
        continue;
      }
      const MultiPoly g = gcd_multi(rest, b);
      if (g.is_constant()) {
        next.push_back(std::move(b));
        continue;
      }
      const MultiPoly q = *exact_divide(b, g);
      if (!q.is_constant()) next.push_back(normalize(q));
      next.push_back(normalize(g));
      rest = *exact_divide(rest, g);
    }
    if (!rest.is_constant()) next.push_back(normalize(rest));
    basis = std::move(next);
  }
  std::sort(basis.begin(), basis.end(), canonical_less);
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  return basis;
}

Specialized substitute(const MultiPoly& f, const Assignment& assignment) {
  for (const auto& [v, value] : assignment) {
    if (v >= f.nvars()) throw DomainError("substitution for a variable outside the ring");
  }
  std::map<Var, std::vector<BigRat>> powers;
  for (const auto& [v, value] : assignment) {
    std::vector<BigRat> pw{BigRat(1)};
    const int d = f.degree(v);
    for (int k = 1; k <= d; ++k) pw.push_back(pw.back() * value);
    powers.emplace(v, std::move(pw));
  }
  std::vector<std::pair<Exponents, BigRat>> raw;
  raw.reserve(f.size());
  for (const auto& t : f.terms()) {
    BigRat c(t.coef);
    Exponents e = t.exp;
    for (const auto& [v, pw] : powers) {
      if (e[v] == 0) continue;
      c *= pw[e[v]];
      e[v] = 0;
    }
    raw.emplace_back(std::move(e), std::move(c));
  }
  BigInt scale = 1;
  for (const auto& [e, c] : raw) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Term> terms;
  terms.reserve(raw.size());
  for (auto& [e, c] : raw) {
    BigInt num = c.get_num() * (scale / c.get_den());
    terms.push_back(Term{std::move(e), std::move(num)});
  }
  return Specialized{MultiPoly::from_terms(f.nvars(), std::move(terms)), scale};
}

Specialized substitute_prefix(const MultiPoly& f, const std::vector<BigRat>& point) {
  Assignment a;
  for (std::size_t i = 0; i < point.size() && i < f.nvars(); ++i) a.emplace(i, point[i]);
  return substitute(f, a);
}

BigRat evaluate(const MultiPoly& f, const std::vector<BigRat>& point) {
  if (point.size() < f.level()) throw DomainError("evaluation point has too few coordinates");
  BigRat sum = 0;
  for (const auto& t : f.terms()) {
    BigRat c(t.coef);
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      BigRat p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), t.exp[i]);
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), t.exp[i]);
      c *= p;
    }
    sum += c;
  }
  return sum;
}

int sign_at(const MultiPoly& f, const std::vector<BigRat>& point) { return sgn(evaluate(f, point)); }

}  // namespace hpcad
