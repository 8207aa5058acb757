#include <cctype>

#include "resolvent/error.hpp"
#include "resolvent/poly.hpp"

namespace resolvent {

namespace {

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := ('-' | '+') unary | power
// power  := atom ('^' integer)?
// atom   := integer ('/' integer)? | identifier | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      std::string digits = integer_literal();
      if (digits.size() > 6) throw ParseError(start, "exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string integer_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(start, "expected integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(integer_literal());
      Integer den = 1;
      if (accept('/')) {
        std::size_t at = pos_;
        den = Integer(integer_literal());
        if (den == 0) throw ParseError(at, "zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return Poly::constant(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "' at byte " + std::to_string(start));
      return Poly::variable(ring_, *idx);
    }
    throw ParseError(pos_, "unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const RingPtr& ring) { return Parser(text, ring).parse(); }

Poly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return parse_poly(text, PolyRing::make(vars));
}

Rational parse_rational(std::string_view text) {
  auto ring = PolyRing::make({});
  Poly p = parse_poly(text, ring);
  return p.constant_value();
}

}  // namespace resolvent
