#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscdecay/polynomial.hpp"
#include "oscdecay/rational.hpp"

namespace oscdecay {

struct NewtonError : std::runtime_error {
  enum class Kind { empty_support, degenerate_support };
  NewtonError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

// Diagonal intersection of the reduced Newton polyhedron. t_star is the
// smallest t with (t,...,t) in the polyhedron; the Newton distance is its
// reciprocal.
struct NewtonAnalysis {
  std::vector<std::vector<int>> support;  // 2n-dimensional integer points
  double t_star = 0.0;
  double newton_distance = 0.0;
  std::optional<Rat> t_star_exact;           // present when solved in rationals
  std::optional<Rat> newton_distance_exact;  // 1 / t_star
  std::vector<double> certificate;           // optimal convex weights, one per point
  bool exact = false;
};

// Concatenated (alpha, beta) exponent vectors of the nonzero terms.
std::vector<std::vector<int>> support_points(const HomogeneousPolynomial& S);

// Solves  min t  s.t.  sum_i mu_i = 1, mu >= 0, (sum_i mu_i P_i)_j <= t.
// Exact rational pivoting for supports of <= 64 points, floating simplex
// beyond that.
NewtonAnalysis newton_distance(const std::vector<std::vector<int>>& support);

inline NewtonAnalysis newton_distance(const HomogeneousPolynomial& S) {
  return newton_distance(support_points(S));
}

struct RankOneReport {
  long samples = 0;
  double min_hs = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::vector<double> worst_point;  // 2n coords, unit sphere point attaining min_hs
};

// Scans ||S''_xy||_HS over a deterministic lattice of the unit sphere
// S^{2n-1}. Entries are homogeneous of degree d-2, so positivity on the
// sphere is equivalent to positivity off the origin.
RankOneReport rank_one_check(const HomogeneousPolynomial& S, int samples_per_dim = 64);

struct NormHypothesisReport {
  enum class Check { none, positivity, homogeneity, triangle };
  bool sampled_pass = false;  // a sampled verdict, never a certificate
  Check failed_check = Check::none;
  std::vector<double> witness_u, witness_v;  // populated on failure
  long positivity_samples = 0;
  long pairs_tested = 0;
};

// Tests whether N(v) = ||S''_xy||_HS^{1/(d-2)} behaves like a norm:
// positivity on sphere samples, degree-(d-2) homogeneity of the HS norm
// (exact by construction, spot-checked), and the triangle inequality on
// sampled pairs. For d == 2 the HS norm is constant and itself plays the
// norm role.
NormHypothesisReport norm_hypothesis_check(const HomogeneousPolynomial& S,
                                           long triple_samples = 1000,
                                           int samples_per_dim = 64);

}  // namespace oscdecay
