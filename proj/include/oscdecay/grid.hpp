#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oscdecay {

// Uniform midpoint lattice of the cube [-radius, radius]^n.
struct GridSpec {
  int n = 1;
  double radius = 1.0;
  int points_per_dim = 2;

  double spacing() const { return 2.0 * radius / points_per_dim; }

  std::int64_t total_nodes() const {
    std::int64_t t = 1;
    for (int k = 0; k < n; ++k) t *= points_per_dim;
    return t;
  }

  double coord(int k) const { return -radius + (k + 0.5) * spacing(); }

  void node(std::int64_t idx, double* out) const {
    for (int k = n - 1; k >= 0; --k) {
      out[k] = coord(static_cast<int>(idx % points_per_dim));
      idx /= points_per_dim;
    }
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("grid: n must be >= 1");
    if (points_per_dim < 2) throw std::invalid_argument("grid: need >= 2 points per dim");
    if (!(radius > 0)) throw std::invalid_argument("grid: radius must be > 0");
  }
};

// Radial cutoff psi(x,y) = shape(|(x,y)| / support_radius), smooth, vanishing
// for |(x,y)| >= support_radius, positive at the origin.
struct CutoffSpec {
  enum class Kind { smooth_bump, cosine_taper };

  Kind kind = Kind::smooth_bump;
  double support_radius = 0.9;

  // t2 = (|x|^2 + |y|^2) / support_radius^2.
  double value_t2(double t2) const;
  double value(double r_xy) const { return value_t2(r_xy * r_xy / (support_radius * support_radius)); }

  static CutoffSpec default_for(double grid_radius) {
    return CutoffSpec{Kind::smooth_bump, 0.9 * grid_radius};
  }

  void validate(double grid_radius) const {
    if (!(support_radius > 0)) throw std::invalid_argument("cutoff: support radius must be > 0");
    if (!(support_radius < grid_radius * 1.4142135623730951))
      throw std::invalid_argument("cutoff: support radius must be < radius * sqrt(2)");
  }
};

}  // namespace oscdecay
