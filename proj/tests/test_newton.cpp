#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oscdecay/newton.hpp"
#include "oscdecay/parser.hpp"
#include "testutil.hpp"

using namespace oscdecay;

namespace {

// Independent check of the diagonal LP: minimum over random convex
// combinations (never below the LP value) plus, in 2-D exponent space, an
// exact scan of all pairwise segments. For two coordinates the objective
// max(u, v) decreases along -(1,1), so its minimum over the hull is attained
// on a boundary edge, and every edge is a segment between support points.
double pairwise_segment_min(const std::vector<std::vector<int>>& pts) {
  auto maxcoord = [](double u, double v) { return std::max(u, v); };
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      double a1 = pts[i][0], a2 = pts[i][1];
      double b1 = pts[j][0], b2 = pts[j][1];
      // candidates: endpoints and the crossing of the two linear coordinates
      for (double mu : {0.0, 1.0}) {
        best = std::min(best, maxcoord(mu * a1 + (1 - mu) * b1, mu * a2 + (1 - mu) * b2));
      }
      double denom = (a1 - b1) - (a2 - b2);
      if (denom != 0.0) {
        double mu = (b2 - b1) / denom;
        if (mu >= 0.0 && mu <= 1.0)
          best = std::min(best, maxcoord(mu * a1 + (1 - mu) * b1, mu * a2 + (1 - mu) * b2));
      }
    }
  }
  return best;
}

double random_combination_min(const std::vector<std::vector<int>>& pts, int tries,
                              std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  const std::size_t m = pts.size(), dim = pts[0].size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> w(m);
  for (int t = 0; t < tries; ++t) {
    double s = 0.0;
    for (auto& v : w) {
      v = ex(rng);
      s += v;
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < dim; ++c) {
      double coord = 0.0;
      for (std::size_t i = 0; i < m; ++i) coord += w[i] / s * pts[i][c];
      worst = std::max(worst, coord);
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace

TEST_CASE("newton_distance: single point") {
  auto a = newton_distance({{1, 1}});
  CHECK(a.exact);
  CHECK(*a.t_star_exact == Rat(1));
  CHECK(*a.newton_distance_exact == Rat(1));
}

TEST_CASE("newton_distance: rank-one degree-6 support {(5,1),(1,5)}") {
  auto a = newton_distance({{5, 1}, {1, 5}});
  REQUIRE(a.exact);
  CHECK(*a.t_star_exact == Rat(3));
  CHECK(*a.newton_distance_exact == rat(1, 3));  // 2n/d with n=1, d=6
  CHECK(a.newton_distance == doctest::Approx(1.0 / 3.0));
  CHECK(a.t_star * a.newton_distance == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("newton_distance: non-homogeneous support {(2,1),(1,3)}") {
  auto a = newton_distance({{2, 1}, {1, 3}});
  REQUIRE(a.exact);
  CHECK(*a.t_star_exact == rat(5, 3));
  CHECK(*a.newton_distance_exact == rat(3, 5));
  // brute force over a grid of convex combinations of the two points
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 10000; ++k) {
    double mu = k / 10000.0;
    best = std::min(best, std::max(2 * mu + (1 - mu), mu + 3 * (1 - mu)));
  }
  CHECK(a.t_star == doctest::Approx(best).epsilon(1e-3));
}

TEST_CASE("newton_distance: errors") {
  CHECK_THROWS_AS(newton_distance(std::vector<std::vector<int>>{}), NewtonError);
  CHECK_THROWS_AS(newton_distance({{0, 0}}), NewtonError);
  CHECK_THROWS_AS(newton_distance({{1, 1}, {0, 0}}), NewtonError);
}

TEST_CASE("newton_distance: LP certificate is feasible and unbeaten by random search") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coord(0, 6), npts(2, 6), dims(1, 2);
  for (int rep = 0; rep < 12; ++rep) {
    int n = dims(rng);
    int m = npts(rng);
    std::vector<std::vector<int>> pts;
    for (int i = 0; i < m; ++i) {
      std::vector<int> p(2 * n);
      int s = 0;
      for (auto& c : p) {
        c = coord(rng);
        s += c;
      }
      if (s == 0) p[0] = 1;
      pts.push_back(p);
    }
    auto a = newton_distance(pts);

    // feasibility: certificate weights sum to 1, max coordinate equals t_star
    double wsum = 0.0;
    for (double w : a.certificate) {
      CHECK(w >= -1e-12);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
    double worst = -1e300;
    for (std::size_t c = 0; c < pts[0].size(); ++c) {
      double v = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) v += a.certificate[i] * pts[i][c];
      worst = std::max(worst, v);
    }
    CHECK(worst == doctest::Approx(a.t_star).epsilon(1e-9));

    // optimality: no random convex combination does better
    double probe = random_combination_min(pts, 100000, rng);
    CHECK(probe >= a.t_star - 1e-9);
  }
}

TEST_CASE("newton_distance: exact match with the 2-D segment oracle") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> coord(0, 9), npts(2, 7);
  for (int rep = 0; rep < 20; ++rep) {
    int m = npts(rng);
    std::vector<std::vector<int>> pts;
    for (int i = 0; i < m; ++i) {
      std::vector<int> p{coord(rng), coord(rng)};
      if (p[0] + p[1] == 0) p[0] = 1;
      pts.push_back(p);
    }
    auto a = newton_distance(pts);
    CHECK(std::fabs(a.t_star - pairwise_segment_min(pts)) <= 1e-6);
  }
}

TEST_CASE("newton_distance: homogeneous supports satisfy t_star >= d/(2n)") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 1 + static_cast<int>(rng() % 2);
    int d = 3 + static_cast<int>(rng() % 5);
    auto S = testutil::random_poly(rng, n, d, 4);
    if (S.is_zero()) continue;
    auto a = newton_distance(S);
    CHECK(a.t_star >= static_cast<double>(d) / (2 * n) - 1e-12);
  }
}

TEST_CASE("newton_distance: dominated points do not change t_star") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> coord(0, 5), bump(0, 3);
  for (int rep = 0; rep < 15; ++rep) {
    int n = 1 + static_cast<int>(rng() % 2);
    std::vector<std::vector<int>> pts;
    int m = 2 + static_cast<int>(rng() % 4);
    for (int i = 0; i < m; ++i) {
      std::vector<int> p(2 * n);
      int s = 0;
      for (auto& c : p) {
        c = coord(rng);
        s += c;
      }
      if (s == 0) p[0] = 1;
      pts.push_back(p);
    }
    auto base = newton_distance(pts);
    auto dominated = pts[rng() % pts.size()];
    for (auto& c : dominated) c += bump(rng);
    pts.push_back(dominated);
    auto extended = newton_distance(pts);
    CHECK(*base.t_star_exact == *extended.t_star_exact);
  }
}

TEST_CASE("rank_one_check: coupled example passes") {
  auto rep = rank_one_check(testutil::example1());
  CHECK(rep.pass);
  CHECK(rep.min_hs > rep.threshold);
}

TEST_CASE("rank_one_check: x^3 y^3 fails on the axis") {
  auto S = parse_polynomial("x1^3*y1^3", 1);
  auto rep = rank_one_check(S);
  CHECK_FALSE(rep.pass);
  CHECK(rep.min_hs == doctest::Approx(0.0).epsilon(1e-15));
  // worst point on an axis: one of the two coordinates vanishes
  REQUIRE(rep.worst_point.size() == 2);
  CHECK(std::min(std::fabs(rep.worst_point[0]), std::fabs(rep.worst_point[1])) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("rank_one_check: constant identity Hessian") {
  auto S = parse_polynomial("x1*y1 + x2*y2", 2);
  auto rep = rank_one_check(S);
  CHECK(rep.pass);
  CHECK(rep.min_hs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("rank_one_check: verdict invariant under positive rescaling") {
  std::mt19937_64 rng(41);
  for (const char* expr : {testutil::kFlagshipExpr, "x1^3*y1^3"}) {
    auto S = parse_polynomial(expr, 1);
    auto base = rank_one_check(S);
    for (double c : {3.0, 0.25}) {
      TermMap scaled;
      for (const auto& [k, v] : S.terms()) scaled[k] = v * rat_from_double(c);
      HomogeneousPolynomial Sc(1, S.degree(), scaled);
      auto rep = rank_one_check(Sc);
      CHECK(rep.pass == base.pass);
    }
  }
  (void)rng;
}

TEST_CASE("norm_hypothesis_check: examples") {
  auto good = norm_hypothesis_check(testutil::example1(), 300);
  CHECK(good.sampled_pass);

  auto bad = norm_hypothesis_check(parse_polynomial("x1^3*y1^3", 1), 300);
  CHECK_FALSE(bad.sampled_pass);
  CHECK(bad.failed_check == NormHypothesisReport::Check::positivity);

  auto constant = norm_hypothesis_check(parse_polynomial("x1*y1 + x2*y2", 2), 1000);
  CHECK(constant.sampled_pass);
}

TEST_CASE("newton_distance equals 2n/d for rank-one fixtures (exact)") {
  struct Fixture {
    const char* expr;
    int n;
  };
  const Fixture fixtures[] = {
      {testutil::kExample1Expr, 2}, {testutil::kExample2Expr, 2},
      {testutil::kFlagshipExpr, 1}, {"x1*y1", 1},
      {"x1^3*y1 + x1*y1^3", 1},     {"x1^5*y1 + x1^3*y1^3 + x1*y1^5", 1},
      {"x1^7*y1 + x1*y1^7", 1},     {"x1^9*y1 + x1*y1^9", 1},
      {"x1*y1 + x2*y2", 2},         {"x1*y1 + x2*y2 + x3*y3", 3},
  };
  for (const auto& f : fixtures) {
    auto S = parse_polynomial(f.expr, f.n);
    auto ro = rank_one_check(S);
    REQUIRE_MESSAGE(ro.pass, f.expr);
    auto a = newton_distance(S);
    REQUIRE(a.exact);
    CHECK_MESSAGE(*a.newton_distance_exact == rat(2 * f.n, S.degree()), f.expr);
  }
}
