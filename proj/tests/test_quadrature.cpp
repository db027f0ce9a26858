#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "dispgibbs/contour.hpp"
#include "dispgibbs/quadrature.hpp"

using namespace dispgibbs;
using C = std::complex<double>;

TEST(CCRule, SimpsonCoincidence) {
  const auto& r = cc_rule(2);
  ASSERT_EQ(r.nodes.size(), 3u);
  EXPECT_DOUBLE_EQ(r.nodes[0], 1.0);
  EXPECT_DOUBLE_EQ(r.nodes[1], 0.0);
  EXPECT_DOUBLE_EQ(r.nodes[2], -1.0);
  EXPECT_NEAR(r.weights[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.weights[1], 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.weights[2], 1.0 / 3.0, 1e-15);
}

TEST(CCRule, WeightsSumAndSymmetry) {
  for (int N : {2, 4, 8, 32, 256, 2048}) {
    const auto& r = cc_rule(N);
    EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 2.0, 1e-14) << N;
    for (int k = 0; k <= N; ++k) {
      EXPECT_EQ(r.weights[static_cast<std::size_t>(k)], r.weights[static_cast<std::size_t>(N - k)]);
      EXPECT_EQ(r.nodes[static_cast<std::size_t>(k)], -r.nodes[static_cast<std::size_t>(N - k)]);
    }
  }
}

TEST(CCRule, RejectsOddOrder) { EXPECT_THROW(cc_rule(3), Error); }

TEST(CCRule, PolynomialExactness) {
  for (int N : {4, 8, 16, 32}) {
    for (int d = 0; d <= N; ++d) {
      auto f = [d](C x) { return std::pow(x, d); };
      const C got = integrate_segment(f, Segment{-1.0, 1.0, N}, N);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      EXPECT_NEAR(std::abs(got - exact), 0.0, 1e-13 * std::max(1.0, exact)) << N << " " << d;
    }
  }
  auto sq = [](C x) { return x * x; };
  EXPECT_NEAR(integrate_segment(sq, Segment{-1.0, 1.0, 4}).real(), 2.0 / 3.0, 1e-15);
}

TEST(CCRule, Exponential) {
  auto f = [](C x) { return std::exp(x); };
  EXPECT_NEAR(integrate_segment(f, Segment{-1.0, 1.0, 32}).real(), std::exp(1.0) - std::exp(-1.0), 1e-14);
}

TEST(Segment, ComplexPaths) {
  auto one = [](C) { return C{1.0, 0.0}; };
  for (int N : {2, 8, 64}) EXPECT_NEAR(std::abs(integrate_segment(one, Segment{0.0, C{0.0, 1.0}, N}) - C{0, 1}), 0.0, 1e-15);
  auto e = [](C z) { return std::exp(z); };
  EXPECT_NEAR(std::abs(integrate_segment(e, Segment{0.0, C{0.0, 1.0}, 32}) - (std::exp(C{0, 1}) - 1.0)), 0.0, 1e-14);
}

TEST(Segment, ArcOverPole) {
  // dz/z over the upper unit semicircle from -1 to 1 (clockwise) is -i pi.
  auto f = [](C z) { return 1.0 / z; };
  Contour arc;
  const int chords = 64;
  for (int k = 0; k < chords; ++k)
    arc.segments.push_back({std::polar(1.0, kPi * (1.0 - double(k) / chords)),
                            std::polar(1.0, kPi * (1.0 - double(k + 1) / chords)), 16});
  EXPECT_NEAR(std::abs(integrate_contour(f, arc) - C{0.0, -kPi}), 0.0, 1e-12);
}

TEST(Segment, AffineInvariance) {
  const C a{0.7, -0.4}, b{0.2, 1.1};
  auto f = [](C z) { return std::cos(z) * std::exp(0.3 * z); };
  auto g = [&](C z) { return f(a * z + b); };
  const C lhs = integrate_segment(g, Segment{C{-0.3, 0.1}, C{1.2, 0.5}, 64});
  const C rhs = integrate_segment(f, Segment{a * C{-0.3, 0.1} + b, a * C{1.2, 0.5} + b, 64}) / a;
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-14);
}

TEST(Segment, NonFinite) {
  auto f = [](C z) { return 1.0 / z; };
  try {
    integrate_segment(f, Segment{-1.0, 1.0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
  }
}

TEST(Contour, ClosedPolygonGivesZero) {
  Contour c;
  const std::vector<C> v{{0, 0}, {2, 0}, {2, 1}, {-1, 3}};
  for (std::size_t k = 0; k < v.size(); ++k) c.segments.push_back({v[k], v[(k + 1) % v.size()], 8});
  auto f = [](C z) { return std::exp(z) * z; };
  EXPECT_LT(std::abs(integrate_contour(f, c)), 1e-13);
  auto k = [](C) { return C{3.0, 1.0}; };
  EXPECT_LT(std::abs(integrate_contour(k, c)), 1e-14);
}

TEST(Contour, PrincipalValueSplit) {
  // (1/2pi) int_C e^{ik}/(ik) dk over the pole-avoiding path equals
  // (1/2pi) p.v. int e^{ik}/(ik) dk - 1/2, the p.v. part computed here on the
  // real axis with the symmetric integrand sin(k)/k.
  auto f = [](C k) { return std::exp(C{0, 1} * k - 0.01 * k * k) / (C{0, 1} * k); };
  const C lhs = integrate_contour(f, pole_avoiding_contour(0.5, 40.0)) / (2.0 * kPi);
  auto g = [](C k) { return k == C{0, 0} ? C{1, 0} : std::sin(k) / k * std::exp(-0.01 * k * k); };
  Contour line;
  for (int p = 0; p < 40; ++p) line.segments.push_back({double(p), double(p + 1), 32});
  const C pv = 2.0 * integrate_contour(g, line) / (2.0 * kPi);
  EXPECT_NEAR(std::abs(lhs - (pv - 0.5)), 0.0, 1e-10);
}

TEST(Contour, AdaptiveConvergenceAndNoConvergence) {
  auto f = [](C z) { return std::exp(C{0, 40} * z); };
  Contour c;
  c.segments.push_back({0.0, 10.0, 8});
  const C exact = (std::exp(C{0, 400}) - 1.0) / C{0, 40};
  EXPECT_NEAR(std::abs(integrate_contour(f, c) - exact), 0.0, 1e-10);
  try {
    integrate_contour(f, c, QuadOptions{1e-10, 64});
    FAIL();
  } catch (const NoConvergence& e) {
    EXPECT_NE(e.previous(), e.last());
  }
}

TEST(Contour, ErrorEstimatesShrink) {
  auto f = [](C z) { return 1.0 / (1.0 + 4.0 * z * z); };
  double prev = 1.0;
  for (int N : {8, 16, 32, 64}) {
    const double err = std::abs(integrate_segment(f, Segment{-1.0, 1.0, N}) - std::atan(2.0));
    EXPECT_LT(err, prev);
    prev = err;
  }
}
