#include "oscdecay/operator.hpp"

#include <cmath>
#include <limits>

#include "oscdecay/sphere.hpp"

// This translation unit is compiled with -ffast-math so the per-row phase,
// amplitude and trig loops vectorize (libmvec). Keep NaN/Inf-sensitive logic
// out of here; zero-masking is done with explicit compares before any
// log/pow call.

namespace oscdecay {

double CutoffSpec::value_t2(double t2) const {
  if (!(t2 < 1.0)) return 0.0;
  switch (kind) {
    case Kind::smooth_bump:
      return std::exp(1.0 - 1.0 / (1.0 - t2));
    case Kind::cosine_taper:
      return 0.5 + 0.5 * std::cos(3.14159265358979323846 * std::sqrt(t2));
  }
  return 0.0;
}

double unit_sphere_grad_max(const HomogeneousPolynomial& S, int samples_per_dim) {
  const int n = S.block_dim();
  std::vector<HomogeneousPolynomial> grad;
  grad.reserve(2 * n);
  for (int i = 0; i < n; ++i) grad.push_back(S.derivative_x(i));
  for (int j = 0; j < n; ++j) grad.push_back(S.derivative_y(j));
  double best = 0.0;
  for (const auto& v : sphere_lattice(2 * n, samples_per_dim)) {
    std::span<const double> x(v.data(), n), y(v.data() + n, n);
    double s = 0.0;
    for (const auto& g : grad) {
      double c = g.evaluate(x, y);
      s += c * c;
    }
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

namespace {

// Term factor table: factors[t * nodes + i] = prod_k coord(i)_k ^ exps(t)_k.
std::vector<double> term_factors(const GridSpec& g, const std::vector<std::vector<int>>& exps) {
  const std::int64_t nodes = g.total_nodes();
  std::vector<double> out(exps.size() * nodes);
  std::vector<double> coords(g.n);
  for (std::int64_t i = 0; i < nodes; ++i) {
    g.node(i, coords.data());
    for (std::size_t t = 0; t < exps.size(); ++t) {
      double m = 1.0;
      for (int k = 0; k < g.n; ++k)
        if (exps[t][k]) m *= ipow(coords[k], exps[t][k]);
      out[t * nodes + i] = m;
    }
  }
  return out;
}

std::vector<double> node_r2(const GridSpec& g) {
  const std::int64_t nodes = g.total_nodes();
  std::vector<double> out(nodes);
  std::vector<double> coords(g.n);
  for (std::int64_t i = 0; i < nodes; ++i) {
    g.node(i, coords.data());
    double s = 0.0;
    for (int k = 0; k < g.n; ++k) s += coords[k] * coords[k];
    out[i] = s;
  }
  return out;
}

}  // namespace

DiscretizedOperator::DiscretizedOperator(HomogeneousPolynomial S, double lambda,
                                         DampingExponent z, CutoffSpec cutoff, GridSpec grid_x,
                                         GridSpec grid_y)
    : S_(std::move(S)), lambda_(lambda), z_(z), cutoff_(cutoff), gx_(grid_x), gy_(grid_y) {
  weight_ = ipow(gy_.spacing(), gy_.n);
  precompute();
}

void DiscretizedOperator::precompute() {
  const std::int64_t rows = gx_.total_nodes();
  const std::int64_t cols = gy_.total_nodes();

  std::vector<std::vector<int>> ax, by;
  term_coeff_.clear();
  for (const auto& t : S_.flat_terms()) {
    ax.push_back(t.a);
    by.push_back(t.b);
    term_coeff_.push_back(t.c);
  }
  tx_.r2 = node_r2(gx_);
  ty_.r2 = node_r2(gy_);
  tx_.term = term_factors(gx_, ax);
  ty_.term = term_factors(gy_, by);

  grad_bound_ = ipow(cutoff_.support_radius, S_.degree() - 1) * unit_sphere_grad_max(S_);

  if (!z_.is_zero()) {
    HessianMatrix H = mixed_hessian(S_);
    std::vector<std::vector<int>> hx, hy;
    for (const auto& entry : H.entries) {
      hl_.entry_offset.push_back(static_cast<int>(hl_.coeff.size()));
      hl_.entry_count.push_back(static_cast<int>(entry.flat_terms().size()));
      for (const auto& t : entry.flat_terms()) {
        hx.push_back(t.a);
        hy.push_back(t.b);
        hl_.coeff.push_back(t.c);
      }
    }
    tx_.hess = term_factors(gx_, hx);
    ty_.hess = term_factors(gy_, hy);

    // Metadata: pairs zeroed by the vanishing-HS rule (skipped for huge grids).
    if (rows * cols <= (std::int64_t{1} << 26)) {
      const double inv_rho2 = 1.0 / (cutoff_.support_radius * cutoff_.support_radius);
      for (std::int64_t i = 0; i < rows; ++i) {
        for (std::int64_t j = 0; j < cols; ++j) {
          if ((tx_.r2[i] + ty_.r2[j]) * inv_rho2 >= 1.0) continue;
          double hs2 = 0.0;
          for (std::size_t e = 0; e < hl_.entry_offset.size(); ++e) {
            double v = 0.0;
            for (int t = 0; t < hl_.entry_count[e]; ++t) {
              int ht = hl_.entry_offset[e] + t;
              v += hl_.coeff[ht] * tx_.hess[ht * rows + i] * ty_.hess[ht * cols + j];
            }
            hs2 += v * v;
          }
          if (hs2 == 0.0) ++zero_hs_pairs_;
        }
      }
    } else {
      zero_hs_pairs_ = -1;  // not counted
    }
  }
}

bool DiscretizedOperator::resolved() const {
  const double h = std::max(gx_.spacing(), gy_.spacing());
  return h * lambda_ * grad_bound_ <= 0.25 * (1.0 + 1e-12);
}

cvec DiscretizedOperator::apply(std::span<const std::complex<double>> f) const {
  if (static_cast<std::int64_t>(f.size()) != cols())
    throw std::invalid_argument("apply: input length does not match y-grid");
  return apply_impl(f, /*adjoint=*/false);
}

cvec DiscretizedOperator::apply_adjoint(std::span<const std::complex<double>> g) const {
  if (static_cast<std::int64_t>(g.size()) != rows())
    throw std::invalid_argument("apply_adjoint: input length does not match x-grid");
  return apply_impl(g, /*adjoint=*/true);
}

cvec DiscretizedOperator::apply_impl(std::span<const std::complex<double>> v, bool adjoint) const {
  const std::int64_t rows = gx_.total_nodes();
  const std::int64_t cols = gy_.total_nodes();
  const std::size_t nterms = term_coeff_.size();
  const double rho2 = cutoff_.support_radius * cutoff_.support_radius;
  const double inv_rho2 = 1.0 / rho2;
  const double w = weight_;
  const bool damped = !z_.is_zero();
  const bool bump = cutoff_.kind == CutoffSpec::Kind::smooth_bump;

  std::vector<double> ph(cols), amp(cols), sn(cols), cs(cols);
  std::vector<double> vr(v.size()), vi(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    vr[k] = v[k].real();
    vi[k] = v[k].imag();
  }
  std::vector<double> outr(adjoint ? cols : rows, 0.0), outi(adjoint ? cols : rows, 0.0);

  const double* tyr2 = ty_.r2.data();
  const double* txr2 = tx_.r2.data();

  for (std::int64_t i = 0; i < rows; ++i) {
    const double r2i = txr2[i];

    // Amplitude: cutoff * quadrature weight, zero outside the support ball.
    if (bump) {
      for (std::int64_t j = 0; j < cols; ++j) {
        double t2 = (r2i + tyr2[j]) * inv_rho2;
        double t2c = t2 < 1.0 ? t2 : 2.0;
        double e = 1.0 - 1.0 / (1.0 - t2c);
        amp[j] = t2 < 1.0 ? w * std::exp(e) : 0.0;
      }
    } else {
      for (std::int64_t j = 0; j < cols; ++j) {
        double t2 = (r2i + tyr2[j]) * inv_rho2;
        double t2c = t2 < 1.0 ? t2 : 0.0;
        double c = 0.5 + 0.5 * std::cos(3.14159265358979323846 * std::sqrt(t2c));
        amp[j] = t2 < 1.0 ? w * c : 0.0;
      }
    }

    // Phase: lambda * sum_t c_t X_t(i) Y_t(j).
    for (std::size_t t = 0; t < nterms; ++t) {
      const double pxi = lambda_ * term_coeff_[t] * tx_.term[t * rows + i];
      const double* ty = ty_.term.data() + t * cols;
      if (t == 0)
        for (std::int64_t j = 0; j < cols; ++j) ph[j] = pxi * ty[j];
      else
        for (std::int64_t j = 0; j < cols; ++j) ph[j] += pxi * ty[j];
    }
    if (nterms == 0)
      for (std::int64_t j = 0; j < cols; ++j) ph[j] = 0.0;

    if (damped) {
      // ||S''||_HS^{sigma+it}: magnitude into amp, argument t*log(hs) into
      // the phase. Vanishing HS norm zeroes the entry for either sign of
      // sigma (continuous extension for sigma > 0, exclusion for sigma <= 0).
      const std::size_t nentries = hl_.entry_offset.size();
      for (std::int64_t j = 0; j < cols; ++j) {
        if (amp[j] == 0.0) continue;
        double hs2 = 0.0;
        for (std::size_t e = 0; e < nentries; ++e) {
          double val = 0.0;
          for (int t = 0; t < hl_.entry_count[e]; ++t) {
            int ht = hl_.entry_offset[e] + t;
            val += hl_.coeff[ht] * tx_.hess[ht * rows + i] * ty_.hess[ht * cols + j];
          }
          hs2 += val * val;
        }
        if (hs2 == 0.0) {
          amp[j] = 0.0;
        } else {
          double loghs = 0.5 * std::log(hs2);
          amp[j] *= std::exp(z_.sigma * loghs);
          ph[j] += z_.t * loghs;
        }
      }
    }

    // Separate sin / cos passes vectorize; a fused loop degrades to scalar
    // sincos.
    for (std::int64_t j = 0; j < cols; ++j) sn[j] = std::sin(ph[j]);
    for (std::int64_t j = 0; j < cols; ++j) cs[j] = std::cos(ph[j]);

    if (!adjoint) {
      double sr = 0.0, si = 0.0;
      for (std::int64_t j = 0; j < cols; ++j) {
        const double kr = cs[j] * amp[j], ki = sn[j] * amp[j];
        sr += kr * vr[j] - ki * vi[j];
        si += kr * vi[j] + ki * vr[j];
      }
      outr[i] = sr;
      outi[i] = si;
    } else {
      const double gr = vr[i], gi = vi[i];
      for (std::int64_t j = 0; j < cols; ++j) {
        const double a = amp[j];
        outr[j] += a * (cs[j] * gr + sn[j] * gi);
        outi[j] += a * (cs[j] * gi - sn[j] * gr);
      }
    }
  }

  cvec out(outr.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {outr[k], outi[k]};
  return out;
}

std::complex<double> DiscretizedOperator::kernel_entry(std::int64_t i, std::int64_t j) const {
  const std::int64_t rows = gx_.total_nodes();
  const std::int64_t cols = gy_.total_nodes();
  if (i < 0 || i >= rows || j < 0 || j >= cols)
    throw std::out_of_range("kernel_entry: index out of range");
  double t2 = (tx_.r2[i] + ty_.r2[j]) / (cutoff_.support_radius * cutoff_.support_radius);
  double a = cutoff_.value_t2(t2) * weight_;
  double phase = 0.0;
  for (std::size_t t = 0; t < term_coeff_.size(); ++t)
    phase += term_coeff_[t] * tx_.term[t * rows + i] * ty_.term[t * cols + j];
  phase *= lambda_;
  if (!z_.is_zero() && a != 0.0) {
    double hs2 = 0.0;
    for (std::size_t e = 0; e < hl_.entry_offset.size(); ++e) {
      double val = 0.0;
      for (int t = 0; t < hl_.entry_count[e]; ++t) {
        int ht = hl_.entry_offset[e] + t;
        val += hl_.coeff[ht] * tx_.hess[ht * rows + i] * ty_.hess[ht * cols + j];
      }
      hs2 += val * val;
    }
    if (hs2 == 0.0) {
      a = 0.0;
    } else {
      double loghs = 0.5 * std::log(hs2);
      a *= std::exp(z_.sigma * loghs);
      phase += z_.t * loghs;
    }
  }
  return {a * std::cos(phase), a * std::sin(phase)};
}

DiscretizedOperator build_operator(const HomogeneousPolynomial& S, double lambda,
                                   DampingExponent z, const CutoffSpec& cutoff,
                                   const GridSpec& grid_x, const GridSpec& grid_y) {
  grid_x.validate();
  grid_y.validate();
  if (grid_x.n != S.block_dim() || grid_y.n != S.block_dim())
    throw std::invalid_argument("build_operator: grid dimension does not match phase");
  cutoff.validate(std::min(grid_x.radius, grid_y.radius));
  if (!(lambda >= 0)) throw std::invalid_argument("build_operator: lambda must be >= 0");

  DiscretizedOperator T(S, lambda, z, cutoff, grid_x, grid_y);

  // Empty effective support: the cutoff must be positive at some node pair.
  // min over pairs of |x|^2+|y|^2 is the sum of the per-side minima.
  double minx = std::numeric_limits<double>::infinity();
  double miny = minx;
  {
    std::vector<double> coords(grid_x.n);
    for (std::int64_t i = 0; i < grid_x.total_nodes(); ++i) {
      grid_x.node(i, coords.data());
      double s = 0;
      for (double c : coords) s += c * c;
      minx = std::min(minx, s);
    }
  }
  {
    std::vector<double> coords(grid_y.n);
    for (std::int64_t j = 0; j < grid_y.total_nodes(); ++j) {
      grid_y.node(j, coords.data());
      double s = 0;
      for (double c : coords) s += c * c;
      miny = std::min(miny, s);
    }
  }
  if (minx + miny >= cutoff.support_radius * cutoff.support_radius)
    throw std::invalid_argument("build_operator: cutoff vanishes at every node pair");
  return T;
}

}  // namespace oscdecay
