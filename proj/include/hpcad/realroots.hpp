#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hpcad/poly.hpp"

namespace hpcad {

/// Raised when no acceptable sample can be found in a cell after the
/// bounded number of retries.
class NonGenericSample : public Error {
 public:
  using Error::Error;
};

/// Open interval (lower, upper) holding exactly one root, or the exact
/// rational root itself when `exact` is set (then lower == upper).
struct IsolatingInterval {
  BigRat lower;
  BigRat upper;
  bool exact = false;
};

/// Isolating intervals for the distinct real roots of a squarefree
/// univariate polynomial, sorted and pairwise disjoint.
class RootList {
 public:
  RootList(std::vector<BigInt> target, std::vector<IsolatingInterval> roots);

  /// Coefficients of the squarefree target, index = degree.
  const std::vector<BigInt>& target() const { return target_; }
  const std::vector<IsolatingInterval>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }

  /// Copy with root i refined until its interval is narrower than `width`
  /// (or found exactly).
  RootList refined(std::size_t i, const BigRat& width) const;
  /// In-place single bisection step of root i.
  void bisect(std::size_t i);

 private:
  std::vector<BigInt> target_;
  std::vector<IsolatingInterval> roots_;
};

/// Dense coefficients of a polynomial in at most one variable.
std::vector<BigInt> to_dense(const MultiPoly& u);
/// The variable a polynomial is univariate in; nullopt for constants.
/// Throws DomainError when several variables occur.
std::optional<Var> univariate_var(const MultiPoly& u);

/// Isolates the distinct real roots of sqrf(u). Throws on the zero polynomial.
RootList isolate(const MultiPoly& u);
RootList isolate_dense(const std::vector<BigInt>& coeffs);

/// Number of distinct real roots of u in the open interval (lo, hi); a
/// missing bound means infinity. u must be squarefree.
int sturm_count(const MultiPoly& u, const std::optional<BigRat>& lo = std::nullopt,
                const std::optional<BigRat>& hi = std::nullopt);

enum class Strategy { Simplest, Midpoint };

std::string to_string(Strategy s);
std::optional<Strategy> parse_strategy(const std::string& name);

/// Extra acceptance test for a candidate sample; rejected candidates are
/// replaced by another point of the same cell.
using SampleFilter = std::function<bool(const BigRat&)>;

/// One rational in every open interval cut out by the real roots of f, the
/// two unbounded ones included, avoiding the zeros of g. Sorted ascending.
std::vector<BigRat> sp_one(const MultiPoly& f, const MultiPoly& g, Strategy strategy = Strategy::Simplest,
                           const SampleFilter& accept = nullptr);

/// Rational with the smallest denominator (then smallest absolute value)
/// in the interval between lo and hi; missing bounds are infinite.
BigRat simplest_between(const std::optional<BigRat>& lo, bool lo_closed, const std::optional<BigRat>& hi,
                        bool hi_closed);

}  // namespace hpcad
