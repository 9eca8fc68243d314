#pragma once

#include <cstdint>
#include <string>

#include "oscdecay/operator.hpp"

namespace oscdecay {

enum class NormMethod { power_iteration_l2, pnorm_power_method, knapp_lower };

std::string to_string(NormMethod m);

struct NormEstimate {
  double value = 0.0;
  NormMethod method = NormMethod::power_iteration_l2;
  double p = 2.0;
  int iterations = 0;
  double residual = 0.0;
  bool is_lower_bound = false;
  bool converged = false;
};

// Largest singular value of the quadrature-scaled kernel, i.e. the
// discretized L2(R^n) -> L2(R^n) operator norm. Power iteration on T*T from
// a seeded random start; stops when the geometric-sequence extrapolation of
// the Rayleigh estimates falls below tol relative.
NormEstimate l2_norm(const DiscretizedOperator& T, double tol = 1e-9, int max_iter = 1000,
                     std::uint64_t seed = 0x5EED);

// Lower bound on the discretized L^p -> L^p norm via the p-norm power method
// (dual-exponent fixed point). Deterministic restarts: constant vector, the
// L2 top singular vector, then seeded random starts. Always a lower bound.
NormEstimate lp_norm_lower(const DiscretizedOperator& T, double p, int restarts = 4,
                           double tol = 1e-9, int max_iter = 400, std::uint64_t seed = 0x5EED);

// Ratio ||T_lambda f||_p / ||f||_p for f the indicator of the ball
// |y| <= c lambda^{-1/d}, c = 1 / (2 (d ||S||_coeff)^{1/d}), a scale on which
// the phase stays within 1/2^d of zero. Certified-on-the-grid lower bound.
// Throws when fewer than 3 y-nodes land inside the ball.
NormEstimate knapp_lower_bound(const HomogeneousPolynomial& S, double lambda, double p,
                               const CutoffSpec& cutoff, const GridSpec& grid);

}  // namespace oscdecay
