#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hpcad {

using BigInt = mpz_class;
using BigRat = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is applied outside its domain (zero polynomial,
/// degree-0 input to a resultant, mismatched variable counts, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Zero-based variable index: Var v names x_{v+1}. Index 0 is innermost
/// (projected last), the highest index is outermost (projected first).
using Var = std::size_t;

/// Ordered list of distinct variable names, innermost first.
class VarOrder {
 public:
  VarOrder() = default;
  explicit VarOrder(std::vector<std::string> innermost_first);

  /// Builds an order from a list written outermost first, e.g. "z,y,x".
  static VarOrder from_outermost_first(std::vector<std::string> names);
  /// x1, ..., xn.
  static VarOrder standard(std::size_t n);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Var v) const { return names_.at(v); }
  std::optional<Var> index_of(std::string_view name) const;
  const std::vector<std::string>& innermost_first() const { return names_; }
  std::vector<std::string> outermost_first() const;

  bool operator==(const VarOrder&) const = default;

 private:
  std::vector<std::string> names_;
};

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exp;
  BigInt coef;
};

/// Graded lexicographic comparison; ties in total degree are broken by the
/// outermost variable first. Returns <0, 0, >0.
int compare_grlex(const Exponents& a, const Exponents& b);

/// Sparse polynomial in Z[x_1, ..., x_n]. Terms are kept sorted by decreasing
/// graded lexicographic order with no zero coefficients, so structural
/// equality is polynomial equality.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const BigInt& c);
  static MultiPoly variable(std::size_t nvars, Var v, std::uint32_t power = 1);
  static MultiPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; throws DomainError otherwise.
  BigInt constant_value() const;

  /// Degree in `v`; -1 for the zero polynomial.
  int degree(Var v) const;
  std::uint32_t total_degree() const;
  /// Largest j with positive degree in x_j (1-based); 0 for constants.
  std::size_t level() const;
  /// Variables with positive degree, ascending.
  std::vector<Var> support() const;

  /// Leading term under graded lex. Requires a nonzero polynomial.
  const Term& leading_term() const;
  int leading_sign() const;

  std::size_t hash() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  bool operator==(const MultiPoly& o) const;

  MultiPoly scaled(const BigInt& k) const;
  MultiPoly pow(unsigned e) const;

  /// Same polynomial viewed with a different number of variables. Shrinking
  /// is only allowed when the dropped variables do not occur.
  MultiPoly with_nvars(std::size_t n) const;
  /// Renames variables: variable v becomes map[v] in a ring with `nvars`
  /// variables. Every occurring variable must be mapped.
  MultiPoly remap(const std::vector<std::optional<Var>>& map, std::size_t nvars) const;

 private:
  void check_same_ring(const MultiPoly& o) const;

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

struct MultiPolyHash {
  std::size_t operator()(const MultiPoly& p) const { return p.hash(); }
};

/// Canonical ordering used to sort polynomial sets deterministically.
bool canonical_less(const MultiPoly& a, const MultiPoly& b);

// ---------------------------------------------------------------------------
// Algebra. All results are exact; "normalized" means primitive over Z with a
// positive leading coefficient under graded lex.

/// Coefficient of v^k as a polynomial in the remaining variables.
MultiPoly coefficient(const MultiPoly& f, Var v, std::uint32_t k);
/// Leading coefficient with respect to v. Throws on the zero polynomial.
MultiPoly lc(const MultiPoly& f, Var v);

MultiPoly derivative(const MultiPoly& f, Var v);

/// Positive gcd of the integer coefficients (0 for the zero polynomial).
BigInt integer_content(const MultiPoly& f);
/// Primitive, positive-leading-coefficient associate of f. Zero stays zero.
MultiPoly normalize(const MultiPoly& f);

/// Content of f viewed in Z[other vars][v], normalized, including the integer
/// content. f == content(f, v) * primitive_part(f, v).
MultiPoly content(const MultiPoly& f, Var v);
MultiPoly primitive_part(const MultiPoly& f, Var v);

/// Exact quotient f / g if g divides f in Z[x], otherwise nullopt.
std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g);
bool divides(const MultiPoly& g, const MultiPoly& f);

/// Normalized greatest common divisor. Throws if both inputs are zero.
MultiPoly gcd_multi(const MultiPoly& f, const MultiPoly& g);

/// Sylvester resultant with respect to v. Both inputs must have positive
/// degree in v.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, Var v);
/// Resultant allowing degree-0 operands, with Res(a, c) = c^deg(a).
MultiPoly resultant_general(const MultiPoly& f, const MultiPoly& g, Var v);

/// (-1)^(d(d-1)/2) Res(f, f') / lc(f). Degree 1 gives 1; degree 0 throws.
MultiPoly discriminant(const MultiPoly& f, Var v);

/// Normalized squarefree part; constants map to 1. Throws on zero.
MultiPoly sqrf(const MultiPoly& f);

struct SqrfPart {
  MultiPoly poly;
  unsigned multiplicity;
};

/// f == sign * integer_content * prod(part.poly ^ part.multiplicity).
/// Parts are normalized, squarefree, pairwise coprime and of positive degree.
struct SqrfParts {
  int sign = 1;
  BigInt integer_content;
  std::vector<SqrfPart> parts;

  std::vector<MultiPoly> odd_parts() const;
  std::vector<MultiPoly> even_parts() const;
  /// sign * integer_content * prod(parts ^ multiplicity).
  MultiPoly reconstruct(std::size_t nvars) const;
};

SqrfParts sqrf_parts(const MultiPoly& f);

/// Refines squarefree polynomials into a pairwise coprime list whose members
/// each divide some input and whose product has the same zero set.
std::vector<MultiPoly> coprime_basis(const std::vector<MultiPoly>& polys);

/// Result of a rational substitution with cleared denominators:
/// poly == scale * f(assignment) with scale a positive integer.
struct Specialized {
  MultiPoly poly;
  BigInt scale;
};

using Assignment = std::map<Var, BigRat>;

Specialized substitute(const MultiPoly& f, const Assignment& assignment);
/// Substitutes values for x_1..x_k where k = point.size().
Specialized substitute_prefix(const MultiPoly& f, const std::vector<BigRat>& point);

/// Exact value at a point with point.size() >= level(f).
BigRat evaluate(const MultiPoly& f, const std::vector<BigRat>& point);
int sign_at(const MultiPoly& f, const std::vector<BigRat>& point);

}  // namespace hpcad
