#include "g2cert/coeff_grammar.hpp"

#include <cctype>
#include <cmath>

namespace g2cert {

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    if (text.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw CoeffParseError(msg, pos); }

  long parse_int() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
      if (v > 1000000000L) fail("integer too large");
    }
    return v;
  }

  double parse_term() {
    double numerator;
    if (eat_word("sqrt(")) {
      long rad = parse_int();
      if (!eat(')')) fail("expected ')'");
      numerator = std::sqrt(static_cast<double>(rad));
    } else {
      long n = parse_int();
      if (eat_word("*sqrt(")) {
        long rad = parse_int();
        if (!eat(')')) fail("expected ')'");
        numerator = static_cast<double>(n) * std::sqrt(static_cast<double>(rad));
      } else {
        numerator = static_cast<double>(n);
      }
    }
    if (eat('/')) {
      long d = parse_int();
      if (d == 0) fail("division by zero");
      return numerator / static_cast<double>(d);
    }
    return numerator;
  }

  double parse_value() {
    double total = 0.0;
    double sign = 1.0;
    if (eat('-'))
      sign = -1.0;
    else
      eat('+');
    total = sign * parse_term();
    while (!done()) {
      if (eat('+'))
        sign = 1.0;
      else if (eat('-'))
        sign = -1.0;
      else
        fail("unexpected character");
      total += sign * parse_term();
    }
    return total;
  }
};

} // namespace

double parse_coeff(std::string_view text) {
  Cursor c{text};
  if (c.done()) c.fail("empty coefficient");
  return c.parse_value();
}

} // namespace g2cert
