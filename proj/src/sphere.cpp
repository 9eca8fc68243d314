#include "oscdecay/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace oscdecay {

namespace {

constexpr double kPi = 3.14159265358979323846;

void append_axes(std::vector<std::vector<double>>& pts, int dim) {
  for (int k = 0; k < dim; ++k) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> e(dim, 0.0);
      e[k] = s;
      pts.push_back(std::move(e));
    }
  }
}

// Generalized golden ratio: unique positive root of x^{m+1} = x + 1.
double harmonious(int m) {
  double x = 1.5;
  for (int it = 0; it < 64; ++it) x = std::pow(1.0 + x, 1.0 / (m + 1));
  return x;
}

}  // namespace

std::vector<std::vector<double>> sphere_lattice(int dim, int samples_per_dim) {
  if (dim < 2) throw std::invalid_argument("sphere_lattice: dim must be >= 2");
  if (samples_per_dim < 2) throw std::invalid_argument("sphere_lattice: need >= 2 samples per dim");
  std::vector<std::vector<double>> pts;

  if (dim == 2) {
    pts.reserve(samples_per_dim + 4);
    for (int k = 0; k < samples_per_dim; ++k) {
      double th = 2.0 * kPi * k / samples_per_dim;
      pts.push_back({std::cos(th), std::sin(th)});
    }
  } else if (dim == 4) {
    const int K = samples_per_dim;
    pts.reserve(static_cast<std::size_t>(K) * K * K + 8);
    for (int i = 0; i < K; ++i) {
      double t1 = kPi * i / (K - 1);  // inclusive of poles
      double c1 = std::cos(t1), s1 = std::sin(t1);
      for (int j = 0; j < K; ++j) {
        double t2 = kPi * j / (K - 1);
        double c2 = std::cos(t2), s2 = std::sin(t2);
        for (int k = 0; k < K; ++k) {
          double t3 = 2.0 * kPi * k / K;
          pts.push_back({c1, s1 * c2, s1 * s2 * std::cos(t3), s1 * s2 * std::sin(t3)});
        }
      }
    }
  } else {
    // Low-discrepancy directions: R_m additive recurrence seeded at 1/2,
    // consecutive coordinate pairs pushed through Box-Muller, normalized.
    long count = 1;
    for (int i = 0; i < 3; ++i) count *= samples_per_dim;
    count = std::min<long>(count, 1L << 18);
    double g = harmonious(dim);
    std::vector<double> alpha(dim);
    double gp = g;
    for (int k = 0; k < dim; ++k) {
      alpha[k] = 1.0 / gp;
      gp *= g;
    }
    std::vector<double> u(dim, 0.5);
    pts.reserve(count + 2 * dim);
    for (long s = 0; s < count; ++s) {
      std::vector<double> v(dim);
      double nrm2 = 0.0;
      for (int k = 0; k < dim; k += 2) {
        double u1 = u[k] > 1e-300 ? u[k] : 1e-300;
        double r = std::sqrt(-2.0 * std::log(u1));
        v[k] = r * std::cos(2.0 * kPi * u[k + 1]);
        v[k + 1] = r * std::sin(2.0 * kPi * u[k + 1]);
        nrm2 += v[k] * v[k] + v[k + 1] * v[k + 1];
      }
      double inv = 1.0 / std::sqrt(nrm2);
      for (double& c : v) c *= inv;
      pts.push_back(std::move(v));
      for (int k = 0; k < dim; ++k) {
        u[k] += alpha[k];
        if (u[k] >= 1.0) u[k] -= 1.0;
      }
    }
  }

  append_axes(pts, dim);
  return pts;
}

}  // namespace oscdecay
