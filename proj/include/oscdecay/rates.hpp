#pragma once

#include <stdexcept>
#include <string>

#include "oscdecay/rational.hpp"

namespace oscdecay {

struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Sharpness { sharp, almost_sharp, upper_bound_only };
enum class Regime { interior, endpoint_low, endpoint_high, below_range, above_range };

std::string to_string(Sharpness s);
std::string to_string(Regime r);

// Predicted decay of ||T_lambda||_p: lambda^{-exponent} (log lambda)^{log_exponent}.
struct DecayPrediction {
  Rat p;
  Rat exponent;            // in [0, 1]
  Rat log_exponent;        // 0 unless at an endpoint, where it equals 2n/d
  Sharpness sharpness = Sharpness::upper_bound_only;
  Regime regime = Regime::interior;
  bool exact = true;               // false when computed through the double API
  bool out_of_hypothesis = false;  // set when forced past the hypothesis gate
};

// Rate table for degree-d phases on R^n x R^n with Newton distance 2n/d.
// With p_lo = d/(d-n), p_hi = d/n:
//   p in (p_lo, p_hi)   -> exponent n/d, sharp
//   p == p_lo or p_hi   -> exponent n/d with (log lambda)^{2n/d}, almost sharp
//   1 < p < p_lo        -> exponent 1/p', upper bound only
//   p > p_hi            -> exponent 1/p,  upper bound only
// Requires d > 2n >= 4 unless allow_out_of_hypothesis is set.
DecayPrediction predict_lp_decay(int d, int n, const Rat& p,
                                 bool allow_out_of_hypothesis = false);
// Floating mode: regime boundaries detected with 1e-12 absolute tolerance;
// result tagged exact = false.
DecayPrediction predict_lp_decay(int d, int n, double p,
                                 bool allow_out_of_hypothesis = false);

// L2 decay trichotomy of the damped family at z = sigma + it.
struct DampedDecayPrediction {
  Rat sigma;
  Rat exponent;  // in (0, 1/2]
  bool has_log = false;
  std::string c_z_note = "constant grows like |z(z-1)|; not folded into the exponent";
  bool exact = true;
};

Rat damped_sigma1(int d, int n);  // -n/(d-2)
Rat damped_sigma2(int d, int n);  // (d-2n)/(2(d-2))

//   sigma >  sigma2 -> 1/2
//   sigma == sigma2 -> 1/2 with log
//   sigma1 < sigma < sigma2 -> ((d-2) sigma + n)/d
// Errors on sigma <= sigma1.
DampedDecayPrediction l2_damped_exponent(const Rat& sigma, int d, int n);
// Floating mode: sigma2 equality detected with 1e-12 absolute tolerance.
DampedDecayPrediction l2_damped_exponent(double sigma, int d, int n);

// Dyadic shell-sum majorant of the damped L2 norm:
//   sum_k min( 2^{-(d-2)k sigma} 2^{k(d-2n)/2} lambda^{-1/2},
//              2^{-(d-2)k sigma} 2^{-nk} )
// The sum is auto-extended past k_max until the size-term tail drops below
// 1e-15 of the partial sum. Divergent for sigma <= sigma1; returns +inf there.
double shell_sum_bound(double lambda, double sigma, int d, int n, int k_max = 64);

// First k at which the oscillatory term overtakes the size term; tracks
// 2^k ~ lambda^{1/d}.
int shell_crossover_index(double lambda, double sigma, int d, int n, int k_max = 4096);

// p' = p/(p-1).
Rat dual_exponent(const Rat& p);
double dual_exponent(double p);

}  // namespace oscdecay
