#pragma once

// Recursive dense representation used by the gcd, resultant and division
// kernels. A Rec is either an integer constant (rank == -1) or a polynomial
// in the variable of rank `rank` whose coefficients are Recs of strictly
// smaller rank. Canonical form: at least two coefficients, nonzero top
// coefficient; zero is the constant 0.

#include <optional>
#include <vector>

#include "hpcad/poly.hpp"

namespace hpcad::detail {

struct Rec {
  int rank = -1;
  BigInt c;               // value when rank == -1
  std::vector<Rec> coeffs;  // coeffs[k] multiplies v^k when rank >= 0

  Rec() = default;
  explicit Rec(BigInt value) : c(std::move(value)) {}

  bool is_const() const { return rank < 0; }
  bool is_zero() const { return rank < 0 && sgn(c) == 0; }
  bool is_one() const { return rank < 0 && c == 1; }
};

bool operator==(const Rec& a, const Rec& b);

/// Builds a Rec from its coefficient vector in `rank`, trimming zeros.
Rec make_rec(int rank, std::vector<Rec> coeffs);

/// Degree in the variable of the given rank (0 if the rank is not the
/// main variable).
int degree_in(const Rec& a, int rank);
/// Coefficient list of a with respect to `rank` (a.rank <= rank).
std::vector<Rec> coeffs_in(const Rec& a, int rank);
const Rec& leading_coeff(const Rec& a);

Rec add(const Rec& a, const Rec& b);
Rec sub(const Rec& a, const Rec& b);
Rec neg(Rec a);
Rec mul(const Rec& a, const Rec& b);
Rec mul_int(const Rec& a, const BigInt& k);
Rec pow(const Rec& a, unsigned e);
Rec derivative(const Rec& a, int rank);

std::optional<Rec> exact_div(const Rec& a, const Rec& b);
/// Like exact_div but throws if b does not divide a.
Rec div_exact(const Rec& a, const Rec& b);

/// Sign of the leading integer, following leading coefficients down.
int leading_sign(const Rec& a);
/// a with its leading integer made positive.
Rec positive(Rec a);

/// Content with respect to the main variable (gcd of coefficients); for a
/// constant it is |c|. Always sign-normalized.
Rec content(const Rec& a);
Rec gcd(const Rec& a, const Rec& b);
/// Resultant with respect to the variable of the given rank.
Rec resultant(const Rec& a, const Rec& b, int rank);

/// rank_to_var[r] is the MultiPoly variable stored at rank r. Variables not
/// listed must not occur.
Rec to_rec(const MultiPoly& p, const std::vector<Var>& rank_to_var);
MultiPoly from_rec(const Rec& r, std::size_t nvars, const std::vector<Var>& rank_to_var);

/// Identity rank map over n variables.
std::vector<Var> natural_ranks(std::size_t n);
/// Ranks with `top` as the main variable and the rest in ascending order.
std::vector<Var> ranks_with_top(std::size_t n, Var top);

}  // namespace hpcad::detail
