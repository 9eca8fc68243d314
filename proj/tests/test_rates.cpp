#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oscdecay/rates.hpp"

using namespace oscdecay;

namespace {

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

Regime dual_regime(Regime r) {
  switch (r) {
    case Regime::below_range: return Regime::above_range;
    case Regime::above_range: return Regime::below_range;
    case Regime::endpoint_low: return Regime::endpoint_high;
    case Regime::endpoint_high: return Regime::endpoint_low;
    case Regime::interior: return Regime::interior;
  }
  return r;
}

}  // namespace

TEST_CASE("predict_lp_decay: d=6, n=2 rate table (exact rationals)") {
  struct Row {
    Rat p;
    Rat exponent;
    Rat log_exponent;
    Sharpness sharp;
    Regime regime;
  };
  const Row rows[] = {
      {rat(6, 5), rat(1, 6), Rat(0), Sharpness::upper_bound_only, Regime::below_range},
      {rat(3, 2), rat(1, 3), rat(2, 3), Sharpness::almost_sharp, Regime::endpoint_low},
      {Rat(2), rat(1, 3), Rat(0), Sharpness::sharp, Regime::interior},
      {rat(5, 2), rat(1, 3), Rat(0), Sharpness::sharp, Regime::interior},
      {Rat(3), rat(1, 3), rat(2, 3), Sharpness::almost_sharp, Regime::endpoint_high},
      {Rat(4), rat(1, 4), Rat(0), Sharpness::upper_bound_only, Regime::above_range},
  };
  for (const auto& r : rows) {
    auto pred = predict_lp_decay(6, 2, r.p);
    CHECK(pred.exponent == r.exponent);
    CHECK(pred.log_exponent == r.log_exponent);
    CHECK(pred.sharpness == r.sharp);
    CHECK(pred.regime == r.regime);
    CHECK(pred.exact);
    CHECK_FALSE(pred.out_of_hypothesis);
  }
}

TEST_CASE("predict_lp_decay: hypothesis gate and override") {
  CHECK_THROWS_AS(predict_lp_decay(4, 2, Rat(2)), HypothesisError);  // d = 2n
  CHECK_THROWS_AS(predict_lp_decay(6, 1, Rat(2)), HypothesisError);  // n < 2
  CHECK_THROWS_AS(predict_lp_decay(6, 2, Rat(1)), HypothesisError);  // p = 1

  auto forced = predict_lp_decay(6, 1, Rat(2), /*allow_out_of_hypothesis=*/true);
  CHECK(forced.out_of_hypothesis);
  CHECK(forced.exponent == rat(1, 6));  // n/d in the interior window
  CHECK(forced.regime == Regime::interior);
}

TEST_CASE("predict_lp_decay: floating mode snaps boundaries within 1e-12") {
  auto p = predict_lp_decay(6, 2, 3.0 - 1e-13);
  CHECK_FALSE(p.exact);
  CHECK(p.regime == Regime::endpoint_high);
  CHECK(p.log_exponent == rat(2, 3));

  auto q = predict_lp_decay(6, 2, 2.5);
  CHECK(q.regime == Regime::interior);
  CHECK(q.exponent == rat(1, 3));
}

TEST_CASE("duality symmetry of the rate table (200 random rational p)") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> num(2, 400), den(1, 40);
  const std::pair<int, int> dims[] = {{6, 2}, {7, 2}, {8, 3}, {9, 2}};
  for (int rep = 0; rep < 200; ++rep) {
    auto [d, n] = dims[rep % 4];
    Rat p(num(rng), den(rng));
    if (p <= 1) continue;
    Rat pd = dual_exponent(p);
    auto a = predict_lp_decay(d, n, p);
    auto b = predict_lp_decay(d, n, pd);
    CHECK(a.exponent == b.exponent);
    CHECK(a.log_exponent == b.log_exponent);
    CHECK(b.regime == dual_regime(a.regime));
  }
}

TEST_CASE("continuity of the exponent across regime boundaries (exact)") {
  for (auto [d, n] : {std::pair{6, 2}, {7, 2}, {8, 3}, {11, 4}}) {
    Rat p_lo(d, d - n), p_hi(d, n);
    // 1/p' at p_lo equals n/d; 1/p at p_hi equals n/d
    CHECK(1 - Rat(1) / p_lo == rat(n, d));
    CHECK(Rat(1) / p_hi == rat(n, d));
    CHECK(predict_lp_decay(d, n, p_lo).exponent == rat(n, d));
    CHECK(predict_lp_decay(d, n, p_hi).exponent == rat(n, d));
  }
}

TEST_CASE("l2_damped_exponent: trichotomy at (d,n) = (6,2)") {
  CHECK(damped_sigma1(6, 2) == rat(-1, 2));
  CHECK(damped_sigma2(6, 2) == rat(1, 4));

  auto mid = l2_damped_exponent(Rat(0), 6, 2);
  CHECK(mid.exponent == rat(1, 3));
  CHECK_FALSE(mid.has_log);

  auto edge = l2_damped_exponent(rat(1, 4), 6, 2);
  CHECK(edge.exponent == rat(1, 2));
  CHECK(edge.has_log);

  auto high = l2_damped_exponent(rat(2, 5), 6, 2);
  CHECK(high.exponent == rat(1, 2));
  CHECK_FALSE(high.has_log);

  CHECK_THROWS_AS(l2_damped_exponent(rat(-1, 2), 6, 2), HypothesisError);
  CHECK_THROWS_AS(l2_damped_exponent(rat(-3, 4), 6, 2), HypothesisError);
}

TEST_CASE("l2_damped_exponent: floating mode detects sigma2 within 1e-12") {
  auto p = l2_damped_exponent(0.25 + 1e-13, 6, 2);
  CHECK(p.has_log);
  CHECK(p.exponent == rat(1, 2));
  CHECK_FALSE(p.exact);

  auto q = l2_damped_exponent(0.4, 6, 2);
  CHECK_FALSE(q.has_log);
}

TEST_CASE("damped exponent range invariant: (0, 1/2]") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 1 + static_cast<int>(rng() % 3);
    int d = 2 * n + 1 + static_cast<int>(rng() % 5);
    double s1 = to_double(damped_sigma1(d, n));
    double sigma = s1 + u(rng) * (1.5 - s1);
    auto pred = l2_damped_exponent(sigma, d, n);
    double e = to_double(pred.exponent);
    CHECK(e > 0.0);
    CHECK(e <= 0.5 + 1e-15);
  }
}

TEST_CASE("consistency hinge: damped sigma=0 equals the p=2 table entry") {
  for (auto [d, n] : {std::pair{6, 2}, {7, 2}, {8, 3}, {9, 4}, {11, 5}}) {
    auto damped = l2_damped_exponent(Rat(0), d, n);
    auto table = predict_lp_decay(d, n, Rat(2));
    CHECK(damped.exponent == table.exponent);
    CHECK(damped.exponent == rat(n, d));
  }
}

TEST_CASE("shell_sum_bound: lambda=1 size-term geometric sum") {
  // at lambda=1, sigma=0, (d,n)=(6,2): sum_k min(2^k, 2^{-2k}) = sum 4^{-k} = 4/3
  CHECK(shell_sum_bound(1.0, 0.0, 6, 2, 60) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("shell_sum_bound: monotone decreasing in lambda") {
  for (double sigma : {-0.4, 0.0, 0.25, 0.4}) {
    CHECK(shell_sum_bound(std::exp2(12), sigma, 6, 2) <
          shell_sum_bound(std::exp2(6), sigma, 6, 2));
  }
}

TEST_CASE("shell_sum_bound: divergent damping returns +inf") {
  CHECK(std::isinf(shell_sum_bound(64.0, -0.5, 6, 2)));  // sigma = sigma1
}

TEST_CASE("shell crossover index tracks lambda^{1/d}") {
  for (int k = 0; k <= 30; k += 3) {
    double lambda = std::exp2(k);
    int kstar = shell_crossover_index(lambda, 0.0, 6, 2);
    CHECK(std::fabs(kstar - std::log2(lambda) / 6.0) <= 1.0);
  }
}

TEST_CASE("shell_sum_bound slopes match the damped exponents (quick)") {
  // full +-0.02 sweep over four sigmas runs in the acceptance suite
  std::vector<double> lx, ly;
  for (int k = 6; k <= 30; ++k) {
    double lam = std::exp2(k);
    lx.push_back(std::log(lam));
    ly.push_back(std::log(shell_sum_bound(lam, 0.0, 6, 2)));
  }
  double slope = ols_slope(lx, ly);
  CHECK(std::fabs(slope + 1.0 / 3.0) <= 0.02);
}

TEST_CASE("dual_exponent") {
  CHECK(dual_exponent(Rat(2)) == Rat(2));
  CHECK(dual_exponent(Rat(3)) == rat(3, 2));
  CHECK(dual_exponent(rat(6, 2)) == rat(6, 6 - 2));  // d/n maps to d/(d-n)
  CHECK(dual_exponent(2.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(dual_exponent(Rat(1)), HypothesisError);
}
