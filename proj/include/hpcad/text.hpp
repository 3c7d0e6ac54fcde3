#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hpcad/poly.hpp"

namespace hpcad {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParsedPoly {
  MultiPoly poly;
  VarOrder order;
};

/// Parses
///
///   expr   := term (("+"|"-") term)*
///   term   := factor ("*" factor)*
///   factor := "-" factor | base ("^" uint)?
///   base   := int | var | "(" expr ")"
///   var    := letter (letter|digit|"_")*
///
/// With no explicit order the variable names are sorted ascending and the
/// last one is the outermost variable. An explicit order (outermost first)
/// must list every variable of the text; it may list extra ones.
ParsedPoly parse_poly(std::string_view text,
                      const std::optional<std::vector<std::string>>& outermost_first = std::nullopt);

/// Parses against a fixed variable order.
MultiPoly parse_poly(std::string_view text, const VarOrder& order);

/// Canonical text: terms in decreasing graded lex order, e.g. "x^2 - 2*x*y + 3".
std::string to_string(const MultiPoly& f, const VarOrder& order);
/// Uses x1..xn as variable names.
std::string to_string(const MultiPoly& f);

std::string to_string(const BigRat& q);

}  // namespace hpcad
