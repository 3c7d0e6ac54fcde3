#pragma once

#include <string>

#include "hpcad/poly.hpp"
#include "hpcad/text.hpp"

namespace hpcad {

/// Example 1: f in z, y, x with z outermost.
ParsedPoly corpus_ex1();

/// (sum x_i^2)^2 - 4 sum x_i^2 x_{i+1}^2 with x_{n+1} = x_1. Needs n >= 2.
ParsedPoly corpus_f(std::size_t n);

/// 10^10 F(x_n) - x_1^4, the indefinite perturbation of F with cleared
/// denominators.
ParsedPoly corpus_g(std::size_t n);

/// (sum x_i^2)^2 - 2 sum_i x_i^2 sum_{j=0}^{m} x_{i+3j+1}^2 over 3m+2
/// cyclic variables. Needs m >= 1.
ParsedPoly corpus_b(std::size_t m);

/// Dispatch by family name: "ex1", "F", "G" or "B".
ParsedPoly corpus(const std::string& family, std::size_t size);

}  // namespace hpcad
