#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace oscdecay {

// Exact rational scalar. Coefficients, Newton distances and rate-table
// entries are kept in Rat; conversion to double happens at evaluation
// boundaries only.
using Rat = mpq_class;

inline double to_double(const Rat& r) { return r.get_d(); }

// Canonicalized fraction. The raw two-argument mpq_class constructor does
// not reduce, and GMP comparisons assume canonical operands.
inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Exact: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) { return Rat(x); }

// Canonical "p/q" (or "p" when q == 1).
inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

struct RatParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "p/q", integers, and plain decimals ("1.25", "-0.5", ".75").
// No exponent notation.
Rat rat_from_string(const std::string& text);

// True when the string is consumable by rat_from_string.
bool looks_like_rational(const std::string& text);

}  // namespace oscdecay
