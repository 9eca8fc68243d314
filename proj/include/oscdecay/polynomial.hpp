#pragma once

#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oscdecay/rational.hpp"

namespace oscdecay {

// Exponent vector of one variable block, length n.
struct MultiIndex {
  std::vector<int> exps;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : exps(std::move(e)) {}
  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }

  int order() const {
    int s = 0;
    for (int e : exps) s += e;
    return s;
  }
  int size() const { return static_cast<int>(exps.size()); }
  int operator[](int i) const { return exps[i]; }

  auto operator<=>(const MultiIndex&) const = default;
};

using TermKey = std::pair<MultiIndex, MultiIndex>;  // (alpha, beta)
using TermMap = std::map<TermKey, Rat>;             // lexicographic on (alpha, beta)

struct PolynomialError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Homogeneous polynomial on R^n x R^n, sparse exponent -> coefficient map.
// Immutable after construction. The zero polynomial keeps (n, d) metadata
// with an empty term map. Degree d >= 2 is enforced for phases at the
// parser, not here: Hessian entries have degree d-2 which may be 0.
class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial(int n, int d, TermMap terms);

  static HomogeneousPolynomial zero(int n, int d) { return {n, d, TermMap{}}; }

  int block_dim() const { return n_; }
  int degree() const { return d_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Monomial-sum evaluation; coefficients converted to double once at
  // construction.
  double evaluate(std::span<const double> x, std::span<const double> y) const;

  // d/dx_i resp. d/dy_j; differentiating an absent variable gives the zero
  // polynomial of degree d-1.
  HomogeneousPolynomial derivative_x(int i) const;
  HomogeneousPolynomial derivative_y(int j) const;

  // Largest |coefficient| as double (0 for the zero polynomial).
  double max_abs_coefficient() const;
  // Sum of |coefficients| as double.
  double coefficient_l1() const;

  // Canonical text form, parse(print(S)) == S.
  std::string to_string() const;

  bool operator==(const HomogeneousPolynomial& other) const {
    return n_ == other.n_ && d_ == other.d_ && terms_ == other.terms_;
  }

  // Flattened terms for tight evaluation loops.
  struct FlatTerm {
    std::vector<int> a, b;
    double c;
  };
  const std::vector<FlatTerm>& flat_terms() const { return flat_; }

 private:
  int n_ = 0;
  int d_ = 0;
  TermMap terms_;
  std::vector<FlatTerm> flat_;
};

// n x n matrix of degree-(d-2) polynomials; entry (i,j) = d2 S / dx_i dy_j.
struct HessianMatrix {
  int n = 0;
  int entry_degree = 0;
  std::vector<HomogeneousPolynomial> entries;  // row-major n*n

  const HomogeneousPolynomial& at(int i, int j) const { return entries[i * n + j]; }
};

HessianMatrix mixed_hessian(const HomogeneousPolynomial& S);

// Pointwise Hilbert-Schmidt norm of the Hessian: sqrt(sum of squared entries).
double hs_norm_value(const HessianMatrix& H, std::span<const double> x,
                     std::span<const double> y);

// Membership verdict for the no-pure-x/no-pure-y class.
struct OdVerdict {
  bool passes = false;
  std::vector<TermKey> offending;  // terms with alpha == 0 or beta == 0
};

OdVerdict validate_O_d(const HomogeneousPolynomial& S);

// Integer power by repeated multiplication.
inline double ipow(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace oscdecay
