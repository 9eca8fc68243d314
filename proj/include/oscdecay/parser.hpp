#pragma once

#include <stdexcept>
#include <string>

#include "oscdecay/polynomial.hpp"

namespace oscdecay {

struct ParseError : std::runtime_error {
  enum class Kind { syntax, mixed_degree, dimension };

  ParseError(Kind k, std::size_t pos, const std::string& msg)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        kind(k),
        position(pos) {}

  Kind kind;
  std::size_t position;
};

// Grammar:
//   expression := sign? term (('+'|'-') term)*
//   term       := coefficient? ('*'? factor)+
//   factor     := var ('^' uint)?
//   var        := ('x'|'y') uint        1-based index <= n
//   coefficient:= decimal | int '/' int
// Whitespace insignificant. Like terms combined, zero coefficients dropped,
// total degree inferred and required uniform and >= 2.
HomogeneousPolynomial parse_polynomial(const std::string& text, int n);

}  // namespace oscdecay
