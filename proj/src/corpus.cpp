#include "hpcad/corpus.hpp"

namespace hpcad {

namespace {

MultiPoly square(std::size_t n, std::size_t i) { return MultiPoly::variable(n, i, 2); }

MultiPoly sum_of_squares(std::size_t n) {
  MultiPoly s(n);
  for (std::size_t i = 0; i < n; ++i) s += square(n, i);
  return s;
}

}  // namespace

ParsedPoly corpus_ex1() {
  const VarOrder order = VarOrder::from_outermost_first({"z", "y", "x"});
  return {parse_poly("x^4 - 2*x^2*y^2 + 2*x^2*z^2 + y^4 - 2*y^2*z^2 + z^4 + 2*x^2 + 2*y^2 - 4*z^2 - 4", order),
          order};
}

ParsedPoly corpus_f(std::size_t n) {
  if (n < 2) throw DomainError("corpus F needs n >= 2");
  const MultiPoly s = sum_of_squares(n);
  MultiPoly cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc += square(n, i) * square(n, (i + 1) % n);
  return {s * s - cyc.scaled(BigInt(4)), VarOrder::standard(n)};
}

ParsedPoly corpus_g(std::size_t n) {
  ParsedPoly f = corpus_f(n);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 10);
  f.poly = f.poly.scaled(scale) - MultiPoly::variable(n, 0, 4);
  return f;
}

ParsedPoly corpus_b(std::size_t m) {
  if (m < 1) throw DomainError("corpus B needs m >= 1");
  const std::size_t n = 3 * m + 2;
  const MultiPoly s = sum_of_squares(n);
  MultiPoly cross(n);
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly inner(n);
    for (std::size_t j = 0; j <= m; ++j) inner += square(n, (i + 3 * j + 1) % n);
    cross += square(n, i) * inner;
  }
  return {s * s - cross.scaled(BigInt(2)), VarOrder::standard(n)};
}

ParsedPoly corpus(const std::string& family, std::size_t size) {
  if (family == "ex1") return corpus_ex1();
  if (family == "F") return corpus_f(size);
  if (family == "G") return corpus_g(size);
  if (family == "B") return corpus_b(size);
  throw DomainError("unknown corpus family '" + family + "'");
}

}  // namespace hpcad
