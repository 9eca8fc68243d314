#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "oscdecay/grid.hpp"
#include "oscdecay/polynomial.hpp"

namespace oscdecay {

using cvec = std::vector<std::complex<double>>;

// Damping exponent z = sigma + i t.
struct DampingExponent {
  double sigma = 0.0;
  double t = 0.0;
  bool is_zero() const { return sigma == 0.0 && t == 0.0; }
};

// Discretization of T_lambda^z on midpoint lattices:
//   K(i,j) = exp(i lambda S(x_i, y_j)) damp(x_i, y_j) psi(x_i, y_j) w,
// with w = h_y^n and damp = ||S''_xy||_HS^{sigma + i t}. At nodes where the
// HS norm vanishes the damping factor is 0 for sigma > 0 and the node is
// skipped (kernel entry 0) for sigma <= 0; z = 0 exactly means no damping
// factor at all, recovering T_lambda.
//
// Matrix-free: rows are generated on the fly, never materialized. Apply and
// adjoint traverse rows in the same order with the same staged kernel values,
// so <Tf, g> and <f, T*g> agree to rounding.
class DiscretizedOperator {
 public:
  DiscretizedOperator(HomogeneousPolynomial S, double lambda, DampingExponent z,
                      CutoffSpec cutoff, GridSpec grid_x, GridSpec grid_y);

  cvec apply(std::span<const std::complex<double>> f) const;
  cvec apply_adjoint(std::span<const std::complex<double>> g) const;

  // Single kernel entry; test/oracle path, O(1) but unstaged.
  std::complex<double> kernel_entry(std::int64_t i, std::int64_t j) const;

  const HomogeneousPolynomial& phase() const { return S_; }
  double lambda() const { return lambda_; }
  DampingExponent damping() const { return z_; }
  const GridSpec& grid_x() const { return gx_; }
  const GridSpec& grid_y() const { return gy_; }
  const CutoffSpec& cutoff() const { return cutoff_; }

  std::int64_t rows() const { return gx_.total_nodes(); }
  std::int64_t cols() const { return gy_.total_nodes(); }
  double quadrature_weight() const { return weight_; }

  // Gradient bound over the cutoff support: max |grad S| there, by
  // homogeneity support_radius^{d-1} * max over the unit sphere.
  double grad_bound() const { return grad_bound_; }
  // Sampling rule h <= 1/(4 lambda G); when violated the oscillation is
  // under-resolved and norms are not trustworthy.
  bool resolved() const;

  // Pairs where the HS norm vanished and the damping rule zeroed the kernel
  // (0 when z == 0). Computed at build for damped operators.
  std::int64_t zero_hs_pairs() const { return zero_hs_pairs_; }

 private:
  friend class KernelRows;

  HomogeneousPolynomial S_;
  double lambda_;
  DampingExponent z_;
  CutoffSpec cutoff_;
  GridSpec gx_, gy_;
  double weight_;
  double grad_bound_ = 0.0;
  std::int64_t zero_hs_pairs_ = 0;

  // Per-side precomputed tables (term factors, squared radii, hessian
  // entry factors when damped).
  struct SideTables {
    std::vector<double> r2;               // |node|^2
    std::vector<double> term;             // term_count * nodes, term-major
    std::vector<double> hess;             // (n*n*entry_terms) factors, damped only
  };
  SideTables tx_, ty_;
  std::vector<double> term_coeff_;        // per phase term: coefficient
  struct HessLayout {
    std::vector<int> entry_offset;        // per hessian entry: first term index
    std::vector<int> entry_count;
    std::vector<double> coeff;            // per hessian term
  };
  HessLayout hl_;

  void precompute();
  cvec apply_impl(std::span<const std::complex<double>> v, bool adjoint) const;
};

// Validates inputs and constructs the operator. Throws on dimension
// mismatches and when the cutoff vanishes at every node pair.
DiscretizedOperator build_operator(const HomogeneousPolynomial& S, double lambda,
                                   DampingExponent z, const CutoffSpec& cutoff,
                                   const GridSpec& grid_x, const GridSpec& grid_y);

// Max |grad S| over the sphere |(x,y)| = 1, scanned on the same deterministic
// lattice the rank-one check uses. grad S is homogeneous of degree d-1, so
// the bound over a ball of radius rho is rho^{d-1} times this.
double unit_sphere_grad_max(const HomogeneousPolynomial& S, int samples_per_dim = 64);

}  // namespace oscdecay
