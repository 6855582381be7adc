#include "hkm/parser.hpp"

#include "hkm/errors.hpp"

#include <cctype>

namespace hkm {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Polynomial f = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 0, pos_ + 1); }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial f = term();
    for (;;) {
      if (accept('+'))
        f = f + term();
      else if (accept('-'))
        f = f - term();
      else
        return f;
    }
  }

  Polynomial term() {
    Polynomial f = unary();
    while (accept('*')) f = f * unary();
    return f;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("exponent must be a non-negative integer");
      const std::size_t start = pos_;
      std::uint64_t k = read_integer();
      if (k > kMaxExponent) {
        pos_ = start;
        throw ExponentOverflow("exponent " + std::string(text_.substr(start, digits_end_ - start)) +
                               " exceeds " + std::to_string(kMaxExponent) + " at column " +
                               std::to_string(start + 1));
      }
      return base.pow(k);
    }
    return base;
  }

  // Saturates at kMaxExponent + 1 so huge literals still report overflow.
  std::uint64_t read_integer() {
    std::uint64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v <= kMaxExponent) v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    digits_end_ = pos_;
    return v;
  }

  Polynomial primary() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // reduce digit by digit so long literals never overflow
      const std::uint32_t p = ring_->characteristic();
      std::uint32_t v = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = add_mod(mul_mod(v, 10 % p, p), static_cast<std::uint32_t>(text_[pos_] - '0') % p, p);
        ++pos_;
      }
      return Polynomial::constant(ring_, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const std::size_t index = ring_->index_of(name);
      if (index == ring_->nvars()) {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      return Polynomial::variable(ring_, index);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
  std::size_t digits_end_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) { return Parser(text, ring).parse(); }

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars, std::uint32_t p) {
  return parse_polynomial(text, PolyRing::make(p, vars));
}

}  // namespace hkm
