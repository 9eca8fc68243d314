#include "oscdecay/norms.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace oscdecay {

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::power_iteration_l2: return "power_iteration_l2";
    case NormMethod::pnorm_power_method: return "pnorm_power_method";
    case NormMethod::knapp_lower: return "knapp_lower";
  }
  return "?";
}

namespace {

double norm2(const cvec& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

double normp(const cvec& v, double p) {
  double s = 0.0;
  for (const auto& c : v) s += std::pow(std::abs(c), p);
  return std::pow(s, 1.0 / p);
}

void scale(cvec& v, double a) {
  for (auto& c : v) c *= a;
}

cvec seeded_start(std::int64_t len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  cvec v(len);
  for (auto& c : v) c = {u(rng), u(rng)};
  return v;
}

// L2 -> L2 scaling of the kernel-with-weight matrix: sqrt(h_x^n / h_y^n).
double l2_scale(const DiscretizedOperator& T) {
  return std::sqrt(ipow(T.grid_x().spacing(), T.grid_x().n) /
                   ipow(T.grid_y().spacing(), T.grid_y().n));
}

double lp_scale(const DiscretizedOperator& T, double p) {
  return std::pow(ipow(T.grid_x().spacing(), T.grid_x().n) /
                      ipow(T.grid_y().spacing(), T.grid_y().n),
                  1.0 / p);
}

// sigma_max of the raw kernel matrix by power iteration; shared by l2_norm
// and the singular-vector restart of the p-norm method.
struct PowerResult {
  double sigma = 0.0;
  cvec vector;  // right singular vector approximation, unit 2-norm
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

PowerResult power_iterate(const DiscretizedOperator& T, double tol, int max_iter,
                          std::uint64_t seed) {
  cvec v = seeded_start(T.cols(), seed);
  double nv = norm2(v);
  if (nv == 0.0) throw std::logic_error("power iteration: zero start vector");
  scale(v, 1.0 / nv);

  PowerResult res;
  double prev_sigma = 0.0, prev_diff = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    cvec w = T.apply(v);
    double sigma = norm2(w);  // = ||Tv||, Rayleigh estimate for unit v
    res.iterations = it;
    if (sigma == 0.0) {  // operator annihilates v; norm 0 (e.g. empty cutoff)
      res.sigma = 0.0;
      res.vector = v;
      res.converged = true;
      return res;
    }
    cvec u = T.apply_adjoint(w);
    double nu = norm2(u);
    if (nu == 0.0) {
      res.sigma = sigma;
      res.vector = v;
      res.converged = true;
      return res;
    }
    scale(u, 1.0 / nu);
    v = std::move(u);

    double diff = std::fabs(sigma - prev_sigma);
    res.sigma = sigma;
    res.residual = diff / sigma;
    if (it >= 3) {
      // Geometric-tail extrapolation: remaining error ~ diff * q / (1 - q).
      double q = prev_diff > 0.0 ? std::min(diff / prev_diff, 0.95) : 0.0;
      double remaining = diff * q / (1.0 - q);
      if (diff <= tol * sigma && remaining <= tol * sigma) {
        res.converged = true;
        res.vector = v;
        return res;
      }
    }
    prev_sigma = sigma;
    prev_diff = diff;
  }
  res.vector = v;
  return res;
}

}  // namespace

NormEstimate l2_norm(const DiscretizedOperator& T, double tol, int max_iter,
                     std::uint64_t seed) {
  PowerResult pr = power_iterate(T, tol, max_iter, seed);
  NormEstimate est;
  est.method = NormMethod::power_iteration_l2;
  est.p = 2.0;
  est.value = pr.sigma * l2_scale(T);
  est.iterations = pr.iterations;
  est.residual = pr.residual;
  est.converged = pr.converged;
  est.is_lower_bound = false;
  return est;
}

namespace {

// Phase-preserving dual map: (|v_i|^{q-1} v_i / |v_i|)_i.
cvec dual_map(const cvec& v, double q) {
  cvec out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    double a = std::abs(v[k]);
    out[k] = (a == 0.0) ? std::complex<double>(0.0) : v[k] * (std::pow(a, q - 1.0) / a);
  }
  return out;
}

double boyd_from_start(const DiscretizedOperator& T, double p, double pp, cvec x, double tol,
                       int max_iter, int& iters, double& residual, bool& converged) {
  double nx = normp(x, p);
  if (nx == 0.0) return 0.0;
  scale(x, 1.0 / nx);
  double gamma = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    iters = it;
    cvec y = T.apply(x);
    gamma = normp(y, p);
    if (gamma == 0.0) {
      converged = true;
      return 0.0;
    }
    cvec z = T.apply_adjoint(dual_map(y, p));
    double zn = normp(z, pp);
    double inner = 0.0;  // Re <z, x>
    for (std::size_t k = 0; k < z.size(); ++k)
      inner += z[k].real() * x[k].real() + z[k].imag() * x[k].imag();
    residual = (zn - inner) / std::max(zn, 1e-300);
    if (zn <= inner * (1.0 + tol)) {
      converged = true;
      return gamma;
    }
    x = dual_map(z, pp);
    double nn = normp(x, p);
    if (nn == 0.0) {
      converged = true;
      return gamma;
    }
    scale(x, 1.0 / nn);
  }
  return gamma;
}

}  // namespace

NormEstimate lp_norm_lower(const DiscretizedOperator& T, double p, int restarts, double tol,
                           int max_iter, std::uint64_t seed) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("lp_norm_lower: p must lie in (1, infinity)");
  const double pp = p / (p - 1.0);

  NormEstimate est;
  est.method = NormMethod::pnorm_power_method;
  est.p = p;
  est.is_lower_bound = true;

  double best = 0.0;
  bool any_converged = false;
  int total_iters = 0;
  double best_residual = 0.0;

  for (int r = 0; r < std::max(restarts, 1); ++r) {
    cvec x;
    if (r == 0) {
      x.assign(T.cols(), std::complex<double>(1.0, 0.0));
    } else if (r == 1) {
      x = power_iterate(T, 1e-8, 200, seed).vector;  // L2 singular vector start
    } else {
      x = seeded_start(T.cols(), seed + 0x9E3779B97F4A7C15ULL * r);
    }
    int iters = 0;
    double residual = 0.0;
    bool converged = false;
    double gamma = boyd_from_start(T, p, pp, std::move(x), tol, max_iter, iters, residual,
                                   converged);
    total_iters += iters;
    if (gamma > best) {
      best = gamma;
      best_residual = residual;
    }
    any_converged = any_converged || converged;
  }

  est.value = best * lp_scale(T, p);
  est.iterations = total_iters;
  est.residual = best_residual;
  est.converged = any_converged;
  return est;
}

NormEstimate knapp_lower_bound(const HomogeneousPolynomial& S, double lambda, double p,
                               const CutoffSpec& cutoff, const GridSpec& grid) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("knapp_lower_bound: requires lambda >= 1");
  if (!(p > 1.0)) throw std::invalid_argument("knapp_lower_bound: p must lie in (1, infinity)");
  const int d = S.degree();
  const double cs = S.coefficient_l1();
  if (cs == 0.0) throw std::invalid_argument("knapp_lower_bound: zero phase");
  const double c = 1.0 / (2.0 * std::pow(d * cs, 1.0 / d));
  const double ball = c * std::pow(lambda, -1.0 / d);

  DiscretizedOperator T = build_operator(S, lambda, DampingExponent{}, cutoff, grid, grid);

  cvec f(T.cols(), 0.0);
  std::int64_t inside = 0;
  std::vector<double> coords(grid.n);
  for (std::int64_t j = 0; j < T.cols(); ++j) {
    grid.node(j, coords.data());
    double r2 = 0.0;
    for (double x : coords) r2 += x * x;
    if (r2 <= ball * ball) {
      f[j] = 1.0;
      ++inside;
    }
  }
  if (inside < 3)
    throw std::invalid_argument(
        "knapp_lower_bound: ball of radius " + std::to_string(ball) +
        " contains fewer than 3 grid nodes; use a finer grid");

  cvec Tf = T.apply(f);
  const double wx = ipow(grid.spacing(), grid.n);
  const double wy = wx;
  double num = 0.0;
  for (const auto& v : Tf) num += std::pow(std::abs(v), p);
  num = std::pow(wx * num, 1.0 / p);
  double den = std::pow(wy * static_cast<double>(inside), 1.0 / p);

  NormEstimate est;
  est.method = NormMethod::knapp_lower;
  est.p = p;
  est.value = num / den;
  est.iterations = 1;
  est.is_lower_bound = true;
  est.converged = true;
  return est;
}

}  // namespace oscdecay
