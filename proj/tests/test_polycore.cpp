#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oscdecay/parser.hpp"
#include "oscdecay/polynomial.hpp"
#include "testutil.hpp"

using namespace oscdecay;

namespace {

TermKey key1(std::vector<int> a, std::vector<int> b) {
  return {MultiIndex(std::move(a)), MultiIndex(std::move(b))};
}

// Central-difference mixed second derivative of S, step h.
double fd_mixed(const HomogeneousPolynomial& S, int i, int j, std::vector<double> x,
                std::vector<double> y, double h = 1e-4) {
  auto ev = [&](double dx, double dy) {
    auto xx = x;
    auto yy = y;
    xx[i] += dx;
    yy[j] += dy;
    return S.evaluate(xx, yy);
  };
  return (ev(h, h) - ev(h, -h) - ev(-h, h) + ev(-h, -h)) / (4.0 * h * h);
}

}  // namespace

TEST_CASE("parse: identity monomial") {
  auto S = parse_polynomial("x1*y1", 1);
  CHECK(S.block_dim() == 1);
  CHECK(S.degree() == 2);
  REQUIRE(S.term_count() == 1);
  CHECK(S.terms().at(key1({1}, {1})) == Rat(1));
}

TEST_CASE("parse: degree-6 example with 8 fifth-coefficient terms") {
  auto S = testutil::example1();
  CHECK(S.degree() == 6);
  CHECK(S.block_dim() == 2);
  REQUIRE(S.term_count() == 8);
  for (const auto& [k, c] : S.terms()) CHECK(c == rat(1, 5));
  CHECK(S.terms().count(key1({5, 0}, {1, 0})) == 1);
  CHECK(S.terms().count(key1({1, 0}, {5, 0})) == 1);
  CHECK(S.terms().count(key1({0, 1}, {0, 5})) == 1);
}

TEST_CASE("parse: juxtaposition, decimals and like-term combination") {
  auto S = parse_polynomial("2x1y1 + 0.5*x1*y1 - x1y1", 1);
  REQUIRE(S.term_count() == 1);
  CHECK(S.terms().at(key1({1}, {1})) == rat(3, 2));

  auto Z = parse_polynomial("x1^2*y1^2 - x1^2*y1^2", 1);
  CHECK(Z.is_zero());
  CHECK(Z.degree() == 4);
}

TEST_CASE("parse: mixed-degree error") {
  CHECK_THROWS_AS(parse_polynomial("x1^3*y1 + x1*y1^2", 1), ParseError);
  try {
    parse_polynomial("x1^3*y1 + x1*y1^2", 1);
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::mixed_degree);
  }
}

TEST_CASE("parse: dimension error for out-of-range variable index") {
  try {
    parse_polynomial("x3*y1^5", 2);
    FAIL("expected dimension error");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::dimension);
  }
}

TEST_CASE("parse: syntax errors carry a position") {
  try {
    parse_polynomial("x1*y1 + + x1*y1", 1);
    FAIL("expected syntax error");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::syntax);
    CHECK(e.position >= 6);
  }
  CHECK_THROWS_AS(parse_polynomial("", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("3*", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1^ *y1", 1), ParseError);
}

TEST_CASE("parse/print round trip yields identical term maps") {
  std::mt19937_64 rng(7);
  auto check_roundtrip = [](const HomogeneousPolynomial& S) {
    auto S2 = parse_polynomial(S.to_string(), S.block_dim());
    CHECK(S2 == S);
  };
  check_roundtrip(testutil::example1());
  check_roundtrip(testutil::example2());
  check_roundtrip(testutil::flagship());
  for (int rep = 0; rep < 25; ++rep) {
    int n = 1 + static_cast<int>(rng() % 3);
    int d = 2 + static_cast<int>(rng() % 5);
    auto S = testutil::random_poly(rng, n, d, 1 + static_cast<int>(rng() % 6));
    if (S.is_zero()) continue;
    check_roundtrip(S);
  }
}

TEST_CASE("validate_O_d") {
  CHECK(validate_O_d(testutil::example1()).passes);

  auto pure_x = parse_polynomial("x1^6", 1);
  auto v = validate_O_d(pure_x);
  CHECK_FALSE(v.passes);
  REQUIRE(v.offending.size() == 1);
  CHECK(v.offending[0] == key1({6}, {0}));

  auto mixed = parse_polynomial("x1^5*y1 + y1^6", 1);
  auto v2 = validate_O_d(mixed);
  CHECK_FALSE(v2.passes);
  REQUIRE(v2.offending.size() == 1);
  CHECK(v2.offending[0] == key1({0}, {6}));

  // Brute-force cross-check on random sparse polynomials.
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 1 + static_cast<int>(rng() % 2);
    auto S = testutil::random_poly(rng, n, 4, 3);
    bool expect = true;
    for (const auto& [k, c] : S.terms())
      if (std::min(k.first.order(), k.second.order()) < 1) expect = false;
    CHECK(validate_O_d(S).passes == expect);
  }
}

TEST_CASE("mixed_hessian: constant for the identity monomial") {
  auto H = mixed_hessian(parse_polynomial("x1*y1", 1));
  CHECK(H.n == 1);
  CHECK(H.entry_degree == 0);
  REQUIRE(H.entries.size() == 1);
  CHECK(H.entries[0].term_count() == 1);
  CHECK(H.entries[0].terms().at(key1({0}, {0})) == Rat(1));
}

TEST_CASE("mixed_hessian: separable example gives the diagonal quartic display") {
  auto H = mixed_hessian(testutil::example2());
  REQUIRE(H.n == 2);
  // diag(x1^4 + y1^4, x2^4 + y2^4), off-diagonal identically zero
  TermMap d0;
  d0[key1({4, 0}, {0, 0})] = 1;
  d0[key1({0, 0}, {4, 0})] = 1;
  CHECK(H.at(0, 0) == HomogeneousPolynomial(2, 4, d0));
  TermMap d1;
  d1[key1({0, 4}, {0, 0})] = 1;
  d1[key1({0, 0}, {0, 4})] = 1;
  CHECK(H.at(1, 1) == HomogeneousPolynomial(2, 4, d1));
  CHECK(H.at(0, 1).is_zero());
  CHECK(H.at(1, 0).is_zero());
}

TEST_CASE("mixed_hessian agrees with central finite differences") {
  std::mt19937_64 rng(13);
  auto S = testutil::random_poly(rng, 2, 4, 6);
  auto H = mixed_hessian(S);
  for (int pt = 0; pt < 20; ++pt) {
    auto x = testutil::random_point(rng, 2);
    auto y = testutil::random_point(rng, 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double exact = H.at(i, j).evaluate(x, y);
        double fd = fd_mixed(S, i, j, x, y);
        CHECK(std::fabs(exact - fd) <= 1e-6 * std::max(1.0, std::fabs(exact)));
      }
    }
  }
}

TEST_CASE("derivative of an absent variable is the zero polynomial") {
  auto S = parse_polynomial("x1^3*y1^3", 2);  // no x2, no y2
  CHECK(S.derivative_x(1).is_zero());
  CHECK(S.derivative_y(1).is_zero());
  CHECK(S.derivative_x(1).degree() == 5);
}

TEST_CASE("evaluate: examples and homogeneity") {
  auto S = parse_polynomial("x1*y1", 1);
  CHECK(S.evaluate(std::vector<double>{2.0}, std::vector<double>{3.0}) == doctest::Approx(6.0));

  auto E1 = testutil::example1();
  std::vector<double> e1{1.0, 0.0};
  CHECK(E1.evaluate(e1, e1) == doctest::Approx(0.4).epsilon(1e-14));

  CHECK_THROWS_AS(S.evaluate(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0}),
                  PolynomialError);

  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 1 + static_cast<int>(rng() % 2);
    int d = 2 + static_cast<int>(rng() % 4);
    auto P = testutil::random_poly(rng, n, d, 4);
    for (int pt = 0; pt < 10; ++pt) {
      auto x = testutil::random_point(rng, n);
      auto y = testutil::random_point(rng, n);
      double base = P.evaluate(x, y);
      for (double s : {0.5, 2.0, 7.0}) {
        auto xs = x;
        auto ys = y;
        for (auto& c : xs) c *= s;
        for (auto& c : ys) c *= s;
        double scaled = P.evaluate(xs, ys);
        double expect = ipow(s, d) * base;
        CHECK(std::fabs(scaled - expect) <= 1e-12 * std::max(1.0, std::fabs(expect)));
      }
    }
  }
}

TEST_CASE("hs_norm_value: constant identity Hessian, separable example, scaling") {
  // S = x1 y1 + x2 y2 has identity Hessian, HS norm sqrt(2) everywhere.
  auto S = parse_polynomial("x1*y1 + x2*y2", 2);
  auto H = mixed_hessian(S);
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 5; ++rep) {
    auto x = testutil::random_point(rng, 2);
    auto y = testutil::random_point(rng, 2);
    CHECK(hs_norm_value(H, x, y) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }

  auto H2 = mixed_hessian(testutil::example2());
  std::vector<double> e1{1.0, 0.0};
  CHECK(hs_norm_value(H2, e1, e1) == doctest::Approx(2.0).epsilon(1e-14));

  // Entries are homogeneous of degree d-2.
  auto S3 = testutil::flagship();
  auto H3 = mixed_hessian(S3);
  for (int rep = 0; rep < 10; ++rep) {
    auto x = testutil::random_point(rng, 1);
    auto y = testutil::random_point(rng, 1);
    double base = hs_norm_value(H3, x, y);
    auto xs = x;
    auto ys = y;
    for (auto& c : xs) c *= 3.0;
    for (auto& c : ys) c *= 3.0;
    double scaled = hs_norm_value(H3, xs, ys);
    double expect = ipow(3.0, S3.degree() - 2) * base;
    CHECK(std::fabs(scaled - expect) <= 1e-12 * std::max(1.0, std::fabs(expect)));
  }
}

TEST_CASE("zero polynomial keeps metadata and evaluates to zero") {
  auto Z = HomogeneousPolynomial::zero(2, 4);
  CHECK(Z.is_zero());
  CHECK(Z.degree() == 4);
  CHECK(Z.to_string() == "0");
  std::vector<double> p{1.0, 2.0};
  CHECK(Z.evaluate(p, p) == 0.0);
}
