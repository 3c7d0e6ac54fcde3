#include "hpcad/text.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace hpcad {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Int, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const VarOrder& order) : toks_(std::move(toks)), order_(order) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return p;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = next().kind == Tok::Minus;
      MultiPoly t = term();
      if (minus) {
        acc -= t;
      } else {
        acc += t;
      }
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (peek().kind == Tok::Star) {
      next();
      acc *= factor();
    }
    return acc;
  }

  MultiPoly factor() {
    if (peek().kind == Tok::Minus) {
      next();
      return -factor();
    }
    MultiPoly b = base();
    if (peek().kind == Tok::Caret) {
      next();
      const Token& e = next();
      if (e.kind != Tok::Int) throw ParseError("expected a non-negative integer exponent", e.pos);
      unsigned long exponent = 0;
      try {
        exponent = std::stoul(e.text);
      } catch (const std::exception&) {
        throw ParseError("exponent out of range", e.pos);
      }
      if (exponent > 100000) throw ParseError("exponent out of range", e.pos);
      b = b.pow(static_cast<unsigned>(exponent));
    }
    return b;
  }

  MultiPoly base() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Int:
        return MultiPoly::constant(order_.size(), BigInt(t.text));
      case Tok::Ident: {
        auto v = order_.index_of(t.text);
        if (!v) throw ParseError("unknown variable '" + t.text + "'", t.pos);
        return MultiPoly::variable(order_.size(), *v);
      }
      case Tok::LParen: {
        MultiPoly inner = expr();
        const Token& close = next();
        if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  const VarOrder& order_;
  std::size_t i_ = 0;
};

}  // namespace

ParsedPoly parse_poly(std::string_view text, const std::optional<std::vector<std::string>>& outermost_first) {
  auto toks = lex(text);
  std::set<std::string> names;
  for (const auto& t : toks) {
    if (t.kind == Tok::Ident) names.insert(t.text);
  }
  VarOrder order;
  if (outermost_first) {
    order = VarOrder::from_outermost_first(*outermost_first);
    for (const auto& n : names) {
      if (!order.index_of(n)) throw DomainError("variable '" + n + "' is missing from the variable order");
    }
  } else {
    order = VarOrder(std::vector<std::string>(names.begin(), names.end()));
  }
  Parser p(std::move(toks), order);
  return ParsedPoly{p.parse(), order};
}

MultiPoly parse_poly(std::string_view text, const VarOrder& order) {
  Parser p(lex(text), order);
  return p.parse();
}

std::string to_string(const MultiPoly& f, const VarOrder& order) {
  if (order.size() < f.nvars()) throw DomainError("variable order shorter than the polynomial ring");
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    BigInt c = t.coef;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    c = abs(c);
    first = false;
    std::vector<std::string> factors;
    for (std::size_t v = t.exp.size(); v-- > 0;) {
      if (t.exp[v] == 0) continue;
      std::string s = order.name(v);
      if (t.exp[v] > 1) s += "^" + std::to_string(t.exp[v]);
      factors.push_back(std::move(s));
    }
    if (factors.empty() || c != 1) factors.insert(factors.begin(), c.get_str());
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k > 0) os << "*";
      os << factors[k];
    }
  }
  return os.str();
}

std::string to_string(const MultiPoly& f) { return to_string(f, VarOrder::standard(f.nvars())); }

std::string to_string(const BigRat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace hpcad
