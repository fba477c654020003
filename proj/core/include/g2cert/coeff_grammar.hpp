#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace g2cert {

/* Exact coefficient grammar for registry files (whitespace-free):
 *   value := ['+'|'-'] term (('+'|'-') term)*
 *   term  := INT '*sqrt(' INT ')' ['/' INT]
 *          | 'sqrt(' INT ')' ['/' INT]
 *          | INT ['/' INT]
 * so "1/3", "-2/3", "sqrt(6)/6", "2*sqrt(30)/30", "-10/60-sqrt(30)/60" are all
 * legal. Anything else is a parse error carrying the offending position. */
class CoeffParseError : public std::runtime_error {
public:
  CoeffParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  size_t position() const { return pos_; }

private:
  size_t pos_;
};

double parse_coeff(std::string_view text);

} // namespace g2cert
