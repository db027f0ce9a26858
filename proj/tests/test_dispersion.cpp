#include <gtest/gtest.h>

#include <random>

#include "dispgibbs/dispersion.hpp"

using namespace dispgibbs;

TEST(Normalize, StripsConstantAndLinearTerms) {
  auto w = normalize({{0, 5.0}, {1, 2.0}, {2, 1.0}});
  EXPECT_EQ(w.degree(), 2);
  EXPECT_EQ(w.coefficient_map().size(), 1u);
  EXPECT_EQ(w.coeff(2), cplx(1.0));
  EXPECT_EQ(w.drift(), cplx(2.0));
  EXPECT_EQ(w.phase_rate(), cplx(5.0));
}

TEST(Normalize, AcceptsHeat) {
  auto w = normalize({{2, cplx{0.0, -1.0}}});
  EXPECT_EQ(w.leading(), cplx(0.0, -1.0));
}

TEST(Normalize, RejectsImaginaryOddLeading) {
  try {
    normalize({{3, cplx{0.0, 1.0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IllPosed);
    EXPECT_NE(std::string(e.what()).find("k^3"), std::string::npos);
  }
}

TEST(Normalize, RejectsAntiDiffusion) {
  EXPECT_THROW(
      {
        try {
          normalize({{2, cplx{0.0, 1.0}}});
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::IllPosed);
          throw;
        }
      },
      Error);
}

TEST(Normalize, RejectsLowDegree) {
  try {
    normalize({{0, 1.0}, {1, 3.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidDispersion);
  }
}

TEST(Normalize, ImaginaryPartOfLowerOddTermDominatedByDissipation) {
  // -i k^4 bounds Im omega from above even with an imaginary cubic term.
  EXPECT_NO_THROW(normalize({{4, cplx{0.0, -1.0}}, {3, cplx{0.0, 1.0}}}));
  EXPECT_THROW(normalize({{4, 1.0}, {3, cplx{0.0, 1.0}}}), Error);
}

TEST(Normalize, Idempotent) {
  auto w = normalize({{0, 1.0}, {1, -2.0}, {3, 1.5}, {4, 2.0}});
  auto w2 = normalize(w.coefficient_map());
  EXPECT_EQ(w.coefficient_map(), w2.coefficient_map());
  EXPECT_EQ(parse_dispersion(format_dispersion(w)), w);
}

TEST(Eval, Examples) {
  EXPECT_EQ(parse_dispersion("3:1")(2.0), cplx(8.0));
  EXPECT_EQ(parse_dispersion("4:1,3:2")(1.0), cplx(3.0));
  auto heat = parse_dispersion("2:0-1i");
  EXPECT_NEAR(std::abs(heat(cplx{1.0, 1.0}) - cplx{2.0, 0.0}), 0.0, 1e-15);
}

TEST(Parse, Format) {
  auto w = parse_dispersion("2:0-1i");
  EXPECT_EQ(w.leading(), cplx(0.0, -1.0));
  EXPECT_EQ(parse_dispersion("4:1, 3:2").coeff(3), cplx(2.0));
  EXPECT_EQ(parse_complex("-i"), cplx(0.0, -1.0));
  EXPECT_EQ(parse_complex("1.5e-3+2i"), cplx(1.5e-3, 2.0));
  EXPECT_EQ(parse_complex("2.5"), cplx(2.5, 0.0));
}

TEST(Parse, Rejects) {
  for (const char* bad : {"", "3", "-1:1", "3:1,3:2", "x:1", "3:abc", "3:1,,2:1"}) {
    try {
      parse_dispersion(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse) << bad;
    }
  }
}

TEST(Rescaled, MonomialInvariant) {
  auto w = parse_dispersion("2:1");
  EXPECT_EQ(w.rescaled(4.0), w);
}

TEST(Rescaled, CoefficientFormula) {
  auto w = parse_dispersion("4:1,3:2").rescaled(1e-4);
  EXPECT_NEAR(std::abs(w.coeff(3) - 0.2), 0.0, 1e-15);
  EXPECT_EQ(w.coeff(4), cplx(1.0));
  auto v = parse_dispersion("3:1,2:1").rescaled(1e-3);
  EXPECT_NEAR(std::abs(v.coeff(2) - 0.1), 0.0, 1e-15);
}

TEST(Rescaled, MatchesDefinitionAtRandomPoints) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const char* spec : {"4:1,3:2", "3:1,2:1", "5:-1,4:0-1i,2:3", "2:0-1i"}) {
    auto w = parse_dispersion(spec);
    for (double t : {1e-4, 0.3, 7.0}) {
      auto wt = w.rescaled(t);
      for (int k = 0; k < 100; ++k) {
        const cplx z{u(rng), u(rng)};
        const cplx expect = t * w(z * std::pow(t, -1.0 / w.degree()));
        EXPECT_LE(std::abs(wt(z) - expect), 1e-12 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST(ScaledPhaseTest, Substitution) {
  auto p = scaled_phase(parse_dispersion("2:1"), 1.0, 1.0);
  EXPECT_EQ(p.amplitude, 1.0);
  EXPECT_EQ(p.coeffs[1], kI);
  EXPECT_EQ(p.coeffs[2], -kI);

  auto q = scaled_phase(parse_dispersion("3:1"), -1.0, 1.0);
  EXPECT_EQ(q.sigma, -1);
  EXPECT_EQ(q.leading(), cplx(-1.0));
  EXPECT_EQ(q.coeffs[3], kI);

  auto r = scaled_phase(parse_dispersion("3:1,2:1"), 1.0, 1e-2);
  EXPECT_NEAR(r.amplitude, 10.0, 1e-12);
  EXPECT_NEAR(std::abs(r.coeffs[2] - (-kI * 0.1)), 0.0, 1e-15);
}

TEST(StationaryPoints, Examples) {
  auto a = stationary_points(scaled_phase(parse_dispersion("2:1"), 1.0, 1.0));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_NEAR(std::abs(a[0] - 0.5), 0.0, 1e-14);

  auto b = stationary_points(scaled_phase(parse_dispersion("3:1"), 1.0, 1.0));
  ASSERT_EQ(b.size(), 2u);
  EXPECT_NEAR(std::abs(b[0] - 1.0 / std::sqrt(3.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(b[1] + 1.0 / std::sqrt(3.0)), 0.0, 1e-14);

  auto c = stationary_points(scaled_phase(parse_dispersion("3:1"), -1.0, 1.0));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(std::abs(c[0] - cplx{0.0, 1.0 / std::sqrt(3.0)}), 0.0, 1e-14);
}

TEST(StationaryPoints, CountAndResidualForMonomials) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> mag(0.2, 5.0);
  for (int n = 2; n <= 8; ++n)
    for (double sign : {1.0, -1.0})
      for (int sigma : {1, -1})
        for (int rep = 0; rep < 3; ++rep) {
          const double a = sign * mag(rng);
          auto phi = scaled_phase(DispersionRelation::monomial(n, a), sigma, 1.0);
          auto z = stationary_points(phi);
          const double c = phi.leading().real();
          EXPECT_EQ(static_cast<int>(z.size()), expected_stationary_count(n, c));
          for (std::size_t k = 0; k < z.size(); ++k) {
            EXPECT_LT(std::abs(n * c * std::pow(z[k], n - 1) - 1.0), 1e-12);
            EXPECT_GE(z[k].imag(), -1e-12);
            if (k > 0) EXPECT_LE(upper_arg(z[k - 1]), upper_arg(z[k]));
          }
        }
}

TEST(StationaryPoints, ParityTable) {
  EXPECT_EQ(expected_stationary_count(2, 1.0), 1);
  EXPECT_EQ(expected_stationary_count(4, -1.0), 2);
  EXPECT_EQ(expected_stationary_count(3, 1.0), 2);
  EXPECT_EQ(expected_stationary_count(3, -1.0), 1);
  EXPECT_EQ(expected_stationary_count(5, 1.0), 3);
  EXPECT_EQ(expected_stationary_count(5, -1.0), 2);
}

TEST(StationaryPoints, CollisionIsDegenerate) {
  // omega = k^3 + k^2, x < 0: Phi'(z) = i (1 - 2 r^{-1/2} z + 3 z^2), double root at r = 1/3.
  auto w = parse_dispersion("3:1,2:1");
  for (double x : {-1.0 / 3.0, -0.2}) {
    try {
      stationary_points(scaled_phase(w, x, 1.0));
      ADD_FAILURE() << x;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DegeneratePhase);
    }
  }
  EXPECT_EQ(stationary_points(scaled_phase(w, -50.0, 1.0)).size(), 1u);
}

TEST(ExpTaylor, MatchesExponentialSeries) {
  std::vector<cplx> p{0.0, 2.0};
  auto e = exp_taylor(p, 6);
  double f = 1.0;
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) f *= k;
    EXPECT_NEAR(std::abs(e[static_cast<std::size_t>(k)] - std::pow(2.0, k) / f), 0.0, 1e-13);
  }
}
