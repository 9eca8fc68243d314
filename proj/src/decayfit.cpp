#include "oscdecay/decayfit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>

namespace oscdecay {

namespace {

std::vector<DecaySample> resolved_sorted(const std::vector<DecaySample>& samples) {
  std::vector<DecaySample> out;
  for (const auto& s : samples)
    if (s.resolved) out.push_back(s);
  std::stable_sort(out.begin(), out.end(),
                   [](const DecaySample& a, const DecaySample& b) { return a.lambda < b.lambda; });
  return out;
}

struct Ols {
  double slope = 0.0, intercept = 0.0, r2 = 1.0;
};

Ols ols(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Ols o;
  o.slope = sxy / sxx;
  o.intercept = my - o.slope * mx;
  double ssres = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double r = y[i] - (o.intercept + o.slope * x[i]);
    ssres += r * r;
  }
  o.r2 = syy > 0.0 ? std::max(0.0, 1.0 - ssres / syy) : 1.0;
  return o;
}

}  // namespace

DecayFitResult fit_power_law(const std::vector<DecaySample>& samples, double log_q) {
  auto used = resolved_sorted(samples);
  if (used.size() < 4)
    throw FitError(FitError::Kind::insufficient_samples,
                   "fit_power_law: need >= 4 resolved samples, have " +
                       std::to_string(used.size()));
  for (const auto& s : used) {
    if (!(s.norm > 0.0))
      throw FitError(FitError::Kind::zero_norm,
                     "fit_power_law: non-positive norm at lambda = " + std::to_string(s.lambda));
    if (!(s.lambda > 0.0))
      throw FitError(FitError::Kind::bad_input, "fit_power_law: lambda must be positive");
    if (log_q > 0.0 && !(s.lambda > 1.0))
      throw FitError(FitError::Kind::bad_input,
                     "fit_power_law: log-model fit requires lambda > 1");
  }

  std::vector<double> lx(used.size()), ly(used.size());
  for (std::size_t i = 0; i < used.size(); ++i) {
    lx[i] = std::log(used[i].lambda);
    ly[i] = std::log(used[i].norm);
  }

  DecayFitResult fit;
  fit.samples = used;
  fit.used_samples = static_cast<int>(used.size());
  Ols pure = ols(lx, ly);
  fit.slope = pure.slope;
  fit.intercept = pure.intercept;
  fit.r_squared = pure.r2;
  fit.log_q = log_q;
  if (log_q > 0.0) {
    std::vector<double> adj(used.size());
    for (std::size_t i = 0; i < used.size(); ++i) adj[i] = ly[i] - log_q * std::log(lx[i]);
    Ols lm = ols(lx, adj);
    fit.log_model_slope = lm.slope;
    fit.log_model_intercept = lm.intercept;
  }
  return fit;
}

namespace {

CompareReport compare_impl(DecayFitResult& fit, double exponent, bool has_log,
                           const std::string& regime, double tol) {
  CompareReport rep;
  rep.tol = tol;
  rep.predicted_exponent = exponent;
  rep.used_log_model = has_log;
  rep.regime_label = regime;
  if (has_log && fit.log_q <= 0.0)
    throw FitError(FitError::Kind::bad_input,
                   "compare: prediction carries a log factor but the fit has no log model");
  rep.fitted_slope = has_log ? fit.log_model_slope : fit.slope;
  rep.deviation = std::fabs(rep.fitted_slope + exponent);
  rep.pass = rep.deviation <= tol;
  fit.predicted_exponent = exponent;
  fit.deviation = rep.deviation;
  return rep;
}

}  // namespace

CompareReport compare(DecayFitResult& fit, const DecayPrediction& pred, double tol) {
  return compare_impl(fit, to_double(pred.exponent), pred.log_exponent > 0,
                      to_string(pred.regime), tol);
}

CompareReport compare(DecayFitResult& fit, const DampedDecayPrediction& pred, double tol) {
  return compare_impl(fit, to_double(pred.exponent), pred.has_log,
                      pred.has_log ? "sigma2_endpoint" : "damped", tol);
}

GridSpec GridPolicy::grid_for(double lambda, double grad_bound, int n, bool& resolved) const {
  GridSpec g;
  g.n = n;
  g.radius = radius;
  if (override_points > 0) {
    g.points_per_dim = override_points;
    resolved = g.spacing() * lambda * grad_bound <= 0.25 * (1.0 + 1e-12);
    return g;
  }
  double needed = 8.0 * radius * lambda * grad_bound;  // h <= 1/(4 lam G)
  std::int64_t N = std::max<std::int64_t>(min_points_per_dim,
                                          static_cast<std::int64_t>(std::ceil(needed)));
  std::int64_t side = 1;
  for (int k = 0; k < n; ++k) side *= N;
  if (side <= node_budget) {
    resolved = true;
  } else {
    resolved = false;
    N = std::max<std::int64_t>(2, static_cast<std::int64_t>(
                                      std::floor(std::pow(double(node_budget), 1.0 / n))));
  }
  g.points_per_dim = static_cast<int>(N);
  return g;
}

std::vector<DecaySample> sweep(const HomogeneousPolynomial& S, const SweepTarget& target,
                               const std::vector<double>& ladder, const GridPolicy& policy,
                               const SweepOptions& opts) {
  if (ladder.empty()) throw std::invalid_argument("sweep: empty lambda ladder");
  if (ladder.size() < 4)
    throw std::invalid_argument("sweep: ladder needs >= 4 values for a fittable sweep");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i] > ladder[i - 1]))
      throw std::invalid_argument("sweep: ladder must be strictly increasing");
  if (target.kind == SweepTarget::Kind::lp_norm && !(target.value > 1.0))
    throw std::invalid_argument("sweep: p must lie in (1, infinity)");

  const CutoffSpec cutoff = policy.cutoff();
  const double grad_bound =
      ipow(cutoff.support_radius, S.degree() - 1) * unit_sphere_grad_max(S);

  auto run_one = [&](double lambda) -> DecaySample {
    DecaySample s;
    s.lambda = lambda;
    bool resolved = false;
    GridSpec grid = policy.grid_for(lambda, grad_bound, S.block_dim(), resolved);
    s.grid_N = grid.points_per_dim;
    s.resolved = resolved;
    try {
      DampingExponent z;
      if (target.kind == SweepTarget::Kind::damped_l2) z.sigma = target.value;
      DiscretizedOperator T = build_operator(S, lambda, z, cutoff, grid, grid);
      NormEstimate est;
      if (target.kind == SweepTarget::Kind::lp_norm && target.value != 2.0) {
        est = lp_norm_lower(T, target.value, opts.restarts, opts.tol, opts.max_iter, opts.seed);
      } else {
        est = l2_norm(T, opts.tol, opts.max_iter, opts.seed);
      }
      s.norm = est.value;
      s.method = est.method;
      if (!est.converged) s.resolved = false;
    } catch (const std::exception&) {
      s.norm = 0.0;
      s.resolved = false;
    }
    return s;
  };

  std::vector<DecaySample> out(ladder.size());
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < ladder.size(); ++i) out[i] = run_one(ladder[i]);
  } else {
    std::vector<std::future<DecaySample>> futs(ladder.size());
    std::size_t next = 0, done = 0;
    std::size_t inflight = 0;
    // Simple bounded scheduler: keep at most `jobs` samples in flight.
    std::vector<std::size_t> order;
    while (done < ladder.size()) {
      while (next < ladder.size() && inflight < static_cast<std::size_t>(jobs)) {
        futs[next] = std::async(std::launch::async, run_one, ladder[next]);
        order.push_back(next);
        ++next;
        ++inflight;
      }
      std::size_t idx = order[done];
      out[idx] = futs[idx].get();
      ++done;
      --inflight;
    }
  }

  if (opts.warnings) {
    for (const auto& s : out) {
      if (!s.resolved)
        (*opts.warnings) << "warning: lambda=" << s.lambda << " under-resolved at N=" << s.grid_N
                         << " (norm " << (s.norm > 0 ? "recorded but untrusted" : "unavailable")
                         << ")\n";
    }
  }
  return out;
}

namespace {

std::string double_to_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

NormMethod method_from_string(const std::string& s) {
  if (s == "power_iteration_l2") return NormMethod::power_iteration_l2;
  if (s == "pnorm_power_method") return NormMethod::pnorm_power_method;
  if (s == "knapp_lower") return NormMethod::knapp_lower;
  throw FitError(FitError::Kind::bad_input, "unknown norm method '" + s + "'");
}

}  // namespace

void write_samples_csv(std::ostream& os, const std::vector<DecaySample>& samples) {
  os << "lambda,norm,method,grid_N,resolved\n";
  for (const auto& s : samples) {
    os << double_to_string(s.lambda) << ',' << double_to_string(s.norm) << ','
       << to_string(s.method) << ',' << s.grid_N << ',' << (s.resolved ? "true" : "false")
       << '\n';
  }
}

std::vector<DecaySample> read_samples_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw FitError(FitError::Kind::bad_input, "csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "lambda,norm,method,grid_N,resolved")
    throw FitError(FitError::Kind::bad_input,
                   "csv: expected header 'lambda,norm,method,grid_N,resolved', got '" + line +
                       "'");
  std::vector<DecaySample> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5)
      throw FitError(FitError::Kind::bad_input,
                     "csv: line " + std::to_string(lineno) + ": expected 5 fields");
    DecaySample s;
    auto parse_double = [&](const std::string& str, const char* what) {
      double v = 0.0;
      auto res = std::from_chars(str.data(), str.data() + str.size(), v);
      if (res.ec != std::errc{} || res.ptr != str.data() + str.size())
        throw FitError(FitError::Kind::bad_input, "csv: line " + std::to_string(lineno) +
                                                      ": bad " + what + " '" + str + "'");
      return v;
    };
    s.lambda = parse_double(cells[0], "lambda");
    s.norm = parse_double(cells[1], "norm");
    s.method = method_from_string(cells[2]);
    s.grid_N = static_cast<int>(parse_double(cells[3], "grid_N"));
    if (cells[4] == "true")
      s.resolved = true;
    else if (cells[4] == "false")
      s.resolved = false;
    else
      throw FitError(FitError::Kind::bad_input,
                     "csv: line " + std::to_string(lineno) + ": bad resolved flag");
    out.push_back(s);
  }
  return out;
}

}  // namespace oscdecay
