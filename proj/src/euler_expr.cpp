#include "slct/euler_expr.hpp"

#include <cctype>
#include <cstdint>
#include <sstream>

namespace slct {

namespace {

class Parser {
public:
  explicit Parser(const std::string& text) : text_(text) {}

  EulerRingElement run() {
    auto value = expression();
    skip_space();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return value;
  }

private:
  [[noreturn]] void error(const std::string& message) const {
    std::ostringstream os;
    os << "parse error at position " << pos_ << ": " << message;
    fail(ErrorCode::parse, os.str());
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!consume(c)) error(std::string("expected '") + c + "' " + what);
  }

  bool consume_mul() {
    skip_space();
    if (consume('*')) return true;
    // UTF-8 middle dot, as emitted by canonical printing
    if (pos_ + 1 < text_.size() && static_cast<unsigned char>(text_[pos_]) == 0xc2 &&
        static_cast<unsigned char>(text_[pos_ + 1]) == 0xb7) {
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    skip_space();
    const size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || !std::isdigit(static_cast<unsigned char>(text_[pos_ - 1])))
      error("expected an integer");
    return std::stoll(text_.substr(start, pos_ - start));
  }

  EulerRingElement expression() {
    EulerRingElement value = term();
    for (;;) {
      if (consume('+'))
        value = value + term();
      else if (consume('-'))
        value = value - term();
      else
        return value;
    }
  }

  EulerRingElement term() {
    EulerRingElement value = factor();
    while (consume_mul()) value = value * factor();
    return value;
  }

  EulerRingElement factor() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '(') {
      ++pos_;
      auto value = expression();
      expect(')', "to close the group");
      return value;
    }
    if (c == 'I') {
      ++pos_;
      return EulerRingElement::one();
    }
    if (c == 'X') {
      ++pos_;
      expect('(', "after X");
      const std::int64_t m = integer();
      expect(')', "to close X(...)");
      if (m < 1) error("generator weight must be >= 1");
      return EulerRingElement::generator(static_cast<int>(m));
    }
    if (c == 'S') {
      ++pos_;
      expect('[', "after S");
      S1RepDecomposition rep;
      const std::int64_t k0 = integer();
      if (k0 < 0) error("trivial multiplicity must be >= 0");
      rep.k0 = static_cast<int>(k0);
      if (consume(';')) {
        for (;;) {
          expect('(', "to open a (multiplicity,weight) pair");
          const std::int64_t k = integer();
          expect(',', "between multiplicity and weight");
          const std::int64_t m = integer();
          expect(')', "to close the pair");
          if (k < 1 || m < 1) error("pair entries must be >= 1");
          rep.terms.emplace_back(static_cast<int>(k), static_cast<int>(m));
          if (!consume(',')) break;
        }
      }
      expect(']', "to close S[...]");
      try {
        return sphere_characteristic(rep);
      } catch (const Error& e) {
        error(e.what());
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return EulerRingElement(integer());
    error("expected I, X(m), S[...], an integer or a group");
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

EulerRingElement euler_eval(const std::string& expression) {
  return Parser(expression).run();
}

}  // namespace slct
