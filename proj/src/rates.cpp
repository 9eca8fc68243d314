#include "oscdecay/rates.hpp"

#include <cmath>
#include <limits>

namespace oscdecay {

std::string to_string(Sharpness s) {
  switch (s) {
    case Sharpness::sharp: return "sharp";
    case Sharpness::almost_sharp: return "almost_sharp";
    case Sharpness::upper_bound_only: return "upper_bound_only";
  }
  return "?";
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::interior: return "interior";
    case Regime::endpoint_low: return "endpoint_low";
    case Regime::endpoint_high: return "endpoint_high";
    case Regime::below_range: return "below_range";
    case Regime::above_range: return "above_range";
  }
  return "?";
}

namespace {

void check_basic(int d, int n, const Rat& p) {
  if (n < 1 || d < 2) throw HypothesisError("require n >= 1 and d >= 2");
  if (p <= 1) throw HypothesisError("require p in (1, infinity)");
}

DecayPrediction table(int d, int n, const Rat& p, bool allow, bool exact) {
  check_basic(d, n, p);
  const bool in_hypothesis = (d > 2 * n) && (n >= 2);
  if (!in_hypothesis && !allow)
    throw HypothesisError("decay table requires d > 2n >= 4 (got d=" + std::to_string(d) +
                          ", n=" + std::to_string(n) + "); pass allow_out_of_hypothesis to force");

  DecayPrediction out;
  out.p = p;
  out.exact = exact;
  out.out_of_hypothesis = !in_hypothesis;
  const Rat delta = rat(2 * n, d);
  const Rat half_delta = rat(n, d);
  const Rat inv_p = Rat(1) / p;
  const Rat inv_pp = 1 - inv_p;  // 1/p'

  if (d >= 2 * n) {
    const Rat p_lo = rat(d, d - n);
    const Rat p_hi = rat(d, n);
    if (p < p_lo) {
      out.exponent = inv_pp;
      out.regime = Regime::below_range;
      out.sharpness = Sharpness::upper_bound_only;
    } else if (p > p_hi) {
      out.exponent = inv_p;
      out.regime = Regime::above_range;
      out.sharpness = Sharpness::upper_bound_only;
    } else if (p == p_lo || p == p_hi) {
      out.exponent = half_delta;
      out.log_exponent = delta;
      out.regime = (p == p_lo) ? Regime::endpoint_low : Regime::endpoint_high;
      out.sharpness = Sharpness::almost_sharp;
    } else {
      out.exponent = half_delta;
      out.regime = Regime::interior;
      out.sharpness = Sharpness::sharp;
    }
  } else {
    // d < 2n (exploratory only): the interpolation window is empty and the
    // duality envelope min(1/p, 1/p') is all that survives.
    out.exponent = (p <= 2) ? inv_pp : inv_p;
    out.regime = (p <= 2) ? Regime::below_range : Regime::above_range;
    out.sharpness = Sharpness::upper_bound_only;
  }
  return out;
}

}  // namespace

DecayPrediction predict_lp_decay(int d, int n, const Rat& p, bool allow_out_of_hypothesis) {
  return table(d, n, p, allow_out_of_hypothesis, /*exact=*/true);
}

DecayPrediction predict_lp_decay(int d, int n, double p, bool allow_out_of_hypothesis) {
  if (!(p > 1.0)) throw HypothesisError("require p in (1, infinity)");
  // Snap to a regime boundary when within 1e-12 so the endpoint log case is
  // reachable from floating inputs.
  Rat pr = rat_from_double(p);
  if (n >= 1 && d > n) {
    for (const Rat& boundary : {rat(d, d - n), rat(d, n)}) {
      if (std::fabs(p - to_double(boundary)) <= 1e-12) {
        pr = boundary;
        break;
      }
    }
  }
  DecayPrediction out = table(d, n, pr, allow_out_of_hypothesis, /*exact=*/false);
  return out;
}

Rat damped_sigma1(int d, int n) {
  if (d < 3) throw HypothesisError("damped exponents require d >= 3");
  return rat(-n, d - 2);
}

Rat damped_sigma2(int d, int n) {
  if (d < 3) throw HypothesisError("damped exponents require d >= 3");
  return rat(d - 2 * n, 2 * (d - 2));
}

namespace {

DampedDecayPrediction damped(const Rat& sigma, int d, int n, bool exact) {
  const Rat s1 = damped_sigma1(d, n);
  const Rat s2 = damped_sigma2(d, n);
  if (sigma <= s1)
    throw HypothesisError("sigma must exceed sigma1 = " + rat_to_string(s1));
  DampedDecayPrediction out;
  out.sigma = sigma;
  out.exact = exact;
  if (sigma == s2) {
    out.exponent = rat(1, 2);
    out.has_log = true;
  } else if (sigma > s2) {
    out.exponent = rat(1, 2);
  } else {
    out.exponent = (Rat(d - 2) * sigma + Rat(n)) / Rat(d);
  }
  return out;
}

}  // namespace

DampedDecayPrediction l2_damped_exponent(const Rat& sigma, int d, int n) {
  return damped(sigma, d, n, /*exact=*/true);
}

DampedDecayPrediction l2_damped_exponent(double sigma, int d, int n) {
  Rat s = rat_from_double(sigma);
  const Rat s2 = damped_sigma2(d, n);
  if (std::fabs(sigma - to_double(s2)) <= 1e-12) s = s2;
  return damped(s, d, n, /*exact=*/false);
}

double shell_sum_bound(double lambda, double sigma, int d, int n, int k_max) {
  if (!(lambda > 0)) throw std::invalid_argument("shell_sum_bound: lambda must be > 0");
  const double size_rate = (d - 2) * sigma + n;  // size term ~ 2^{-k * size_rate}
  if (size_rate <= 0) return std::numeric_limits<double>::infinity();

  const double inv_sqrt_lambda = 1.0 / std::sqrt(lambda);
  double sum = 0.0;
  const int hard_cap = 1 << 20;
  for (int k = 0;; ++k) {
    double osc = std::exp2(-(d - 2) * k * sigma + 0.5 * (d - 2 * n) * k) * inv_sqrt_lambda;
    double size = std::exp2(-(d - 2) * k * sigma - static_cast<double>(n) * k);
    sum += std::min(osc, size);
    if (k >= k_max) {
      double tail = std::exp2(-size_rate * (k + 1)) / (1.0 - std::exp2(-size_rate));
      if (tail <= 1e-15 * sum || k >= hard_cap) break;
    }
  }
  return sum;
}

int shell_crossover_index(double lambda, double sigma, int d, int n, int k_max) {
  const double inv_sqrt_lambda = 1.0 / std::sqrt(lambda);
  for (int k = 0; k <= k_max; ++k) {
    double osc = std::exp2(-(d - 2) * k * sigma + 0.5 * (d - 2 * n) * k) * inv_sqrt_lambda;
    double size = std::exp2(-(d - 2) * k * sigma - static_cast<double>(n) * k);
    if (osc >= size) return k;
  }
  return k_max;
}

Rat dual_exponent(const Rat& p) {
  if (p <= 1) throw HypothesisError("dual exponent defined for p > 1");
  return p / (p - 1);
}

double dual_exponent(double p) {
  if (!(p > 1.0)) throw HypothesisError("dual exponent defined for p > 1");
  return p / (p - 1.0);
}

}  // namespace oscdecay
