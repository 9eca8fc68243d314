#pragma once

#include <random>
#include <string>
#include <vector>

#include "oscdecay/parser.hpp"
#include "oscdecay/polynomial.hpp"

namespace testutil {

using oscdecay::HomogeneousPolynomial;
using oscdecay::MultiIndex;
using oscdecay::Rat;
using oscdecay::TermKey;
using oscdecay::TermMap;

// Degree-6 example phase on R^2 x R^2 with a fully coupled Hessian.
inline const char* kExample1Expr =
    "1/5*x1^5*y1 + 1/5*x1*y1^5 + 1/5*x1*x2^4*y2 + 1/5*x1*y1^4*y2 + 1/5*x1^4*x2*y1 + "
    "1/5*x2*y1*y2^4 + 1/5*x2^5*y2 + 1/5*x2*y2^5";

// Separable degree-6 phase on R^2 x R^2 (known to decay sharply far outside
// the predicted p-window).
inline const char* kExample2Expr = "1/5*x1^5*y1 + 1/5*x1*y1^5 + 1/5*x2^5*y2 + 1/5*x2*y2^5";

// One-dimensional flagship: S'' = 5x^4 + 5y^4 > 0 off the origin.
inline const char* kFlagshipExpr = "x1^5*y1 + x1*y1^5";

inline HomogeneousPolynomial example1() { return oscdecay::parse_polynomial(kExample1Expr, 2); }
inline HomogeneousPolynomial example2() { return oscdecay::parse_polynomial(kExample2Expr, 2); }
inline HomogeneousPolynomial flagship() { return oscdecay::parse_polynomial(kFlagshipExpr, 1); }

// Random sparse homogeneous polynomial with small rational coefficients.
inline HomogeneousPolynomial random_poly(std::mt19937_64& rng, int n, int d, int terms) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9), coord(0, 2 * n - 1);
  TermMap map;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(2 * n, 0);
    for (int u = 0; u < d; ++u) e[coord(rng)] += 1;
    int nu = 0;
    while (nu == 0) nu = num(rng);
    MultiIndex a(std::vector<int>(e.begin(), e.begin() + n));
    MultiIndex b(std::vector<int>(e.begin() + n, e.end()));
    map[{a, b}] += rat(nu, den(rng));
  }
  for (auto it = map.begin(); it != map.end();)
    it = (it->second == 0) ? map.erase(it) : std::next(it);
  return HomogeneousPolynomial(n, d, std::move(map));
}

inline std::vector<double> random_point(std::mt19937_64& rng, int n, double lo = -1.0,
                                        double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> p(n);
  for (auto& c : p) c = u(rng);
  return p;
}

}  // namespace testutil
