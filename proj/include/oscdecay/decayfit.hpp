#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oscdecay/norms.hpp"
#include "oscdecay/rates.hpp"

namespace oscdecay {

struct DecaySample {
  double lambda = 0.0;
  double norm = 0.0;
  NormMethod method = NormMethod::power_iteration_l2;
  int grid_N = 0;       // points per dimension
  bool resolved = false;  // sampling rule satisfied and estimate succeeded
};

struct FitError : std::runtime_error {
  enum class Kind { insufficient_samples, zero_norm, bad_input };
  FitError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

// OLS of log(norm) on log(lambda) over the resolved samples (>= 4 required).
// When log_q > 0 is supplied, additionally fits
//   log(norm) - q log(log lambda)  on  log(lambda)
// into log_model_slope (q fixed, not estimated: short ladders cannot support
// a free (s, q) fit).
struct DecayFitResult {
  std::vector<DecaySample> samples;  // as fitted (sorted by lambda)
  int used_samples = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double log_q = 0.0;
  double log_model_slope = 0.0;      // valid when log_q > 0
  double log_model_intercept = 0.0;
  double predicted_exponent = 0.0;   // filled by compare()
  double deviation = 0.0;            // |slope + predicted_exponent|
};

DecayFitResult fit_power_law(const std::vector<DecaySample>& samples, double log_q = 0.0);

struct CompareReport {
  bool pass = false;
  double fitted_slope = 0.0;     // log-model slope when the prediction has a log
  double predicted_exponent = 0.0;
  double deviation = 0.0;
  double tol = 0.0;
  bool used_log_model = false;
  std::string regime_label;
};

// Verdict: |slope + exponent| <= tol, using the log-model slope when the
// prediction carries a log factor (the fit must have been made with the
// matching q).
CompareReport compare(DecayFitResult& fit, const DecayPrediction& pred, double tol);
CompareReport compare(DecayFitResult& fit, const DampedDecayPrediction& pred, double tol);

// Maps each lambda to a per-dimension point count N obeying the sampling
// rule h <= 1/(4 lambda G) within the node budget, or marks the sample
// unresolved at the budget ceiling.
struct GridPolicy {
  double radius = 1.0;
  double cutoff_frac = 0.9;  // support radius = cutoff_frac * radius
  CutoffSpec::Kind cutoff_kind = CutoffSpec::Kind::smooth_bump;
  std::int64_t node_budget = 200000;  // max nodes per side (N^n)
  int min_points_per_dim = 16;
  int override_points = 0;  // force N when > 0 (resolution still reported)

  CutoffSpec cutoff() const { return CutoffSpec{cutoff_kind, cutoff_frac * radius}; }
  GridSpec grid_for(double lambda, double grad_bound, int n, bool& resolved) const;
};

struct SweepTarget {
  enum class Kind { lp_norm, damped_l2 } kind = Kind::lp_norm;
  double value = 2.0;  // p for lp_norm, sigma for damped_l2

  static SweepTarget lp(double p) { return {Kind::lp_norm, p}; }
  static SweepTarget damped(double sigma) { return {Kind::damped_l2, sigma}; }
};

struct SweepOptions {
  std::uint64_t seed = 0x5EED;
  double tol = 1e-8;
  int max_iter = 1000;
  int restarts = 3;
  int jobs = 1;
  std::ostream* warnings = nullptr;  // resolution warnings, one line per sample
};

// One sample per ladder entry; per-sample failures mark the sample
// unresolved (norm 0) and the sweep continues. Ladder must be strictly
// increasing with >= 4 entries.
std::vector<DecaySample> sweep(const HomogeneousPolynomial& S, const SweepTarget& target,
                               const std::vector<double>& lambda_ladder,
                               const GridPolicy& policy, const SweepOptions& opts = {});

// CSV schema (exact): lambda,norm,method,grid_N,resolved
void write_samples_csv(std::ostream& os, const std::vector<DecaySample>& samples);
std::vector<DecaySample> read_samples_csv(std::istream& is);

}  // namespace oscdecay
