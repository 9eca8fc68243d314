#include "oscdecay/newton.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "oscdecay/lp.hpp"
#include "oscdecay/sphere.hpp"

namespace oscdecay {

std::vector<std::vector<int>> support_points(const HomogeneousPolynomial& S) {
  std::vector<std::vector<int>> pts;
  pts.reserve(S.term_count());
  for (const auto& [key, coeff] : S.terms()) {
    (void)coeff;
    std::vector<int> p = key.first.exps;
    p.insert(p.end(), key.second.exps.begin(), key.second.exps.end());
    pts.push_back(std::move(p));
  }
  return pts;
}

namespace {

template <typename T>
lp::LpSolution<T> solve_diagonal_lp(const std::vector<std::vector<int>>& support) {
  const std::size_t m = support.size();
  const std::size_t dim = support[0].size();
  // Variables: mu_1..mu_m, t.
  std::vector<std::vector<T>> A;
  std::vector<char> rel;
  std::vector<T> b;

  std::vector<T> row(m + 1, T(0));
  for (std::size_t i = 0; i < m; ++i) row[i] = T(1);
  A.push_back(row);
  rel.push_back('=');
  b.push_back(T(1));

  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<T> r(m + 1, T(0));
    for (std::size_t i = 0; i < m; ++i) r[i] = T(support[i][j]);
    r[m] = T(-1);
    A.push_back(std::move(r));
    rel.push_back('<');
    b.push_back(T(0));
  }

  std::vector<T> c(m + 1, T(0));
  c[m] = T(1);
  return lp::solve_min<T>(A, rel, b, c);
}

}  // namespace

NewtonAnalysis newton_distance(const std::vector<std::vector<int>>& support) {
  if (support.empty())
    throw NewtonError(NewtonError::Kind::empty_support, "newton_distance: empty support");
  const std::size_t dim = support[0].size();
  for (const auto& p : support) {
    if (p.size() != dim)
      throw NewtonError(NewtonError::Kind::empty_support,
                        "newton_distance: inconsistent point dimensions");
    int sum = 0;
    for (int c : p) {
      if (c < 0)
        throw NewtonError(NewtonError::Kind::degenerate_support,
                          "newton_distance: negative coordinate in support");
      sum += c;
    }
    if (sum == 0)
      throw NewtonError(NewtonError::Kind::degenerate_support,
                        "newton_distance: origin lies in the support (t_star would be 0)");
  }

  NewtonAnalysis out;
  out.support = support;
  if (support.size() <= 64) {
    auto sol = solve_diagonal_lp<Rat>(support);
    if (sol.status != lp::LpStatus::optimal)
      throw std::logic_error("newton_distance: exact LP did not reach optimality");
    Rat t = sol.objective;
    out.t_star_exact = t;
    out.newton_distance_exact = Rat(1) / t;
    out.t_star = to_double(t);
    out.newton_distance = to_double(*out.newton_distance_exact);
    out.certificate.reserve(support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
      out.certificate.push_back(to_double(sol.x[i]));
    out.exact = true;
  } else {
    auto sol = solve_diagonal_lp<double>(support);
    if (sol.status != lp::LpStatus::optimal)
      throw std::logic_error("newton_distance: floating LP did not reach optimality");
    out.t_star = sol.objective;
    out.newton_distance = 1.0 / sol.objective;
    out.certificate.assign(sol.x.begin(), sol.x.begin() + support.size());
    out.exact = false;
  }
  return out;
}

RankOneReport rank_one_check(const HomogeneousPolynomial& S, int samples_per_dim) {
  const int n = S.block_dim();
  HessianMatrix H = mixed_hessian(S);

  double max_coeff = 0.0;
  for (const auto& e : H.entries) max_coeff = std::max(max_coeff, e.max_abs_coefficient());

  RankOneReport rep;
  rep.threshold = 1e-10 * max_coeff;

  auto pts = sphere_lattice(2 * n, samples_per_dim);
  rep.samples = static_cast<long>(pts.size());
  rep.min_hs = std::numeric_limits<double>::infinity();
  for (const auto& v : pts) {
    std::span<const double> x(v.data(), n), y(v.data() + n, n);
    double hs = hs_norm_value(H, x, y);
    if (hs < rep.min_hs) {
      rep.min_hs = hs;
      rep.worst_point = v;
    }
  }
  rep.pass = rep.min_hs > rep.threshold;
  return rep;
}

namespace {

double hs_at(const HessianMatrix& H, int n, std::span<const double> v) {
  return hs_norm_value(H, v.subspan(0, n), v.subspan(n, n));
}

}  // namespace

NormHypothesisReport norm_hypothesis_check(const HomogeneousPolynomial& S, long triple_samples,
                                           int samples_per_dim) {
  const int n = S.block_dim();
  const int d = S.degree();
  HessianMatrix H = mixed_hessian(S);
  NormHypothesisReport rep;

  RankOneReport pos = rank_one_check(S, samples_per_dim);
  rep.positivity_samples = pos.samples;
  if (!pos.pass) {
    rep.failed_check = NormHypothesisReport::Check::positivity;
    rep.witness_u = pos.worst_point;
    return rep;
  }

  // Homogeneity spot check: hs(s v) == s^{d-2} hs(v).
  auto probe = sphere_lattice(2 * n, 4);
  for (const auto& v : probe) {
    double base = hs_at(H, n, v);
    for (double s : {0.5, 2.0, 7.0}) {
      std::vector<double> sv(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) sv[k] = s * v[k];
      double scaled = hs_at(H, n, sv);
      double expect = ipow(s, d - 2) * base;
      if (std::fabs(scaled - expect) > 1e-9 * std::max(1.0, std::fabs(expect))) {
        rep.failed_check = NormHypothesisReport::Check::homogeneity;
        rep.witness_u = v;
        return rep;
      }
    }
  }

  // Triangle inequality on random pairs: N(u+v) <= N(u) + N(v) + tol.
  const double q = d > 2 ? 1.0 / (d - 2) : 1.0;
  std::mt19937_64 rng(0x5EEDULL);
  std::normal_distribution<double> gauss;
  auto random_unit = [&]() {
    std::vector<double> v(2 * n);
    double nrm = 0.0;
    do {
      nrm = 0.0;
      for (auto& c : v) {
        c = gauss(rng);
        nrm += c * c;
      }
    } while (nrm < 1e-12);
    nrm = std::sqrt(nrm);
    for (auto& c : v) c /= nrm;
    return v;
  };
  for (long s = 0; s < triple_samples; ++s) {
    auto u = random_unit();
    auto v = random_unit();
    std::vector<double> w(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) w[k] = u[k] + v[k];
    double nu = std::pow(hs_at(H, n, u), q);
    double nv = std::pow(hs_at(H, n, v), q);
    double nw = std::pow(hs_at(H, n, w), q);
    if (nw > nu + nv + 1e-9 * (nu + nv)) {
      rep.failed_check = NormHypothesisReport::Check::triangle;
      rep.witness_u = u;
      rep.witness_v = v;
      rep.pairs_tested = s + 1;
      return rep;
    }
  }
  rep.pairs_tested = triple_samples;
  rep.sampled_pass = true;
  return rep;
}

}  // namespace oscdecay
