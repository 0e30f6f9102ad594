#include <gtest/gtest.h>

#include <cmath>

#include "fractal_ineq/means.hpp"
#include "oracles.hpp"

namespace fi = fractal_ineq;

TEST(Means, AlphaFormsReduceToClassicalOnesAtAlphaOne) {
  const fi::AlphaCtx one(1.0);
  oracles::SplitMix64 rng{41u};
  for (int trial = 0; trial < 10; ++trial) {
    const double y1 = rng.uniform(0.2, 3.0);
    const double y2 = y1 + rng.uniform(0.1, 2.0);
    EXPECT_NEAR(fi::mean(fi::MeanKind::AAlpha, y1, y2, std::nullopt, one),
                fi::mean(fi::MeanKind::AClassical, y1, y2, std::nullopt, one),
                1e-13);
    const double n = rng.uniform(0.5, 3.0);
    EXPECT_NEAR(fi::mean(fi::MeanKind::LnAlpha, y1, y2, n, one),
                std::pow((std::pow(y2, n + 1.0) - std::pow(y1, n + 1.0)) /
                             (n + 1.0),
                         1.0 / n),
                1e-12);
  }
}

TEST(Means, LnAlphaToTheNthPowerIsTheMonomialIntegral) {
  // Ln-alpha(n)^n is the local fractional integral of x^(n*a) over [y1, y2],
  // which ties the mean to the same engine the inequalities run on.
  const fi::AlphaCtx half(0.5);
  for (double n : {0.5, 1.0, 2.0, 3.0}) {
    const double y1 = 0.5;
    const double y2 = 2.0;
    const double m = fi::mean(fi::MeanKind::LnAlpha, y1, y2, n, half);
    const fi::FractalPoly xn = fi::FractalPoly::monomial(0.5, 1.0, n);
    EXPECT_NEAR(std::pow(m, n), fi::lf_integral(xn, fi::Interval(y1, y2)), 1e-12)
        << "n=" << n;
  }
}

TEST(Means, LogMeanAndValidation) {
  const fi::AlphaCtx one(1.0);
  EXPECT_NEAR(fi::mean(fi::MeanKind::LClassical, 1.0, std::exp(1.0), std::nullopt,
                       one),
              (1.0 - std::exp(1.0)) / (0.0 - 1.0), 1e-13);
  EXPECT_THROW(fi::mean(fi::MeanKind::AAlpha, -1.0, 2.0, std::nullopt, one),
               fi::input_error);
  EXPECT_THROW(fi::mean(fi::MeanKind::LClassical, 2.0, 2.0, std::nullopt, one),
               fi::input_error);
  EXPECT_THROW(fi::mean(fi::MeanKind::LnAlpha, 1.0, 2.0, std::nullopt, one),
               fi::input_error);
  EXPECT_THROW(fi::mean(fi::MeanKind::LnAlpha, 1.0, 2.0, 0.0, one),
               fi::input_error);
  EXPECT_THROW(fi::mean(fi::MeanKind::LnClassical, 1.0, 2.0, -1.0, one),
               fi::input_error);
  // Orders in (-1/a, -1) flip the sign of the alpha-radicand while keeping
  // every Gamma argument positive; the fractional root is then not real.
  EXPECT_THROW(fi::mean(fi::MeanKind::LnAlpha, 1.0, 2.0, -1.5, fi::AlphaCtx(0.5)),
               fi::numeric_error);
}

TEST(Proposition1, GoldenValuesAndQuadratureOracle) {
  const fi::AlphaCtx one(1.0);
  const fi::IneqReport rep = fi::prop_mean_bound_1(1.0, 2.0, 0.5, one);
  EXPECT_EQ(rep.label, "prop1");
  EXPECT_NEAR(rep.lhs, 0.0057934548941285247, 1e-15);
  EXPECT_NEAR(rep.rhs, 0.0070497572426733322, 1e-15);
  EXPECT_TRUE(rep.all_satisfied());

  // Independent check: at alpha = 1 the deviation is |integral mean - mid|.
  const double mean_int =
      oracles::integrate([](double x) { return std::sqrt(x); }, 1.0, 2.0);
  EXPECT_NEAR(rep.lhs, std::fabs(mean_int - std::sqrt(1.5)), 1e-6);
}

TEST(Proposition1, RightSideStaysNonnegativeAcrossTheGrid) {
  for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
    const fi::AlphaCtx ctx(alpha);
    for (double s : {0.2, 0.5, 0.9}) {
      for (double y1 : {0.5, 1.0}) {
        const fi::IneqReport rep = fi::prop_mean_bound_1(y1, y1 + 1.5, s, ctx);
        EXPECT_GE(rep.rhs, 0.0) << "alpha=" << alpha << " s=" << s;
        EXPECT_TRUE(std::isfinite(rep.rhs));
      }
    }
  }
  const fi::AlphaCtx one(1.0);
  EXPECT_THROW(fi::prop_mean_bound_1(2.0, 1.0, 0.5, one), fi::input_error);
  EXPECT_THROW(fi::prop_mean_bound_1(1.0, 2.0, 1.0, one), fi::input_error);
}

TEST(Proposition2, HolderVariantShapeAndVerdict) {
  const fi::AlphaCtx one(1.0);
  const fi::IneqReport rep =
      fi::prop_mean_bound_2(1.0, 2.0, 0.5, fi::HolderPair(2.0, 2.0), one);
  EXPECT_EQ(rep.label, "prop2");
  ASSERT_EQ(rep.links.size(), 1u);
  EXPECT_EQ(rep.links[0].name, "lhs<=rhs");
  EXPECT_TRUE(rep.all_satisfied());
  ASSERT_TRUE(rep.p1.has_value());
  EXPECT_EQ(*rep.p1, 2.0);
  EXPECT_EQ(rep.lhs,
            fi::prop_mean_bound_1(1.0, 2.0, 0.5, one).lhs);  // same deviation
}

TEST(Wave, SolutionValuesAndResidual) {
  const fi::AlphaCtx one(1.0);
  const fi::AlphaCtx half(0.5);
  EXPECT_EQ(fi::wave_solution_eval(0.0, 0.0, one), 0.0);
  EXPECT_NEAR(fi::wave_solution_eval(1.0, 1.0, one), 1.5, 1e-15);
  // x^0.5/Gamma(1.5) + t/Gamma(2) at (1,1).
  EXPECT_NEAR(fi::wave_solution_eval(1.0, 1.0, half),
              1.0 / std::tgamma(1.5) + 1.0, 1e-13);
  EXPECT_NEAR(fi::wave_solution_eval(1.0, 1.0, half), 2.1283791670955126, 1e-12);
  EXPECT_THROW(fi::wave_solution_eval(-1.0, 0.0, one), fi::eval_domain_error);

  // The claimed solution does not satisfy the equation: the t-side second
  // derivative is 1, the x-side vanishes identically. True at every alpha.
  for (double alpha : {0.3, 0.5, 1.0}) {
    const fi::AlphaCtx ctx(alpha);
    const auto [lhs, rhs] = fi::wave_residual(1.3, 0.7, ctx);
    EXPECT_NEAR(lhs, 1.0, 1e-12) << "alpha=" << alpha;
    EXPECT_NEAR(rhs, 0.0, 1e-12) << "alpha=" << alpha;
  }
  EXPECT_THROW(fi::wave_residual(0.0, 1.0, one), fi::input_error);
  EXPECT_THROW(fi::wave_residual(1.0, -1.0, one), fi::input_error);
}
