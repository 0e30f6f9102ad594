#include <gtest/gtest.h>

#include <cmath>

#include "fractal_ineq/alpha.hpp"
#include "oracles.hpp"

using namespace fractal_ineq;

TEST(AlphaCtx, AcceptsTheHalfOpenUnitInterval) {
  EXPECT_NO_THROW(AlphaCtx(1.0));
  EXPECT_NO_THROW(AlphaCtx(0.3));
  EXPECT_NO_THROW(AlphaCtx(1e-6));
  EXPECT_THROW(AlphaCtx(0.0), input_error);
  EXPECT_THROW(AlphaCtx(-0.5), input_error);
  EXPECT_THROW(AlphaCtx(1.2), input_error);
  EXPECT_THROW(AlphaCtx(std::nan("")), input_error);
}

TEST(Gamma, MatchesClosedFormsAndTheStandardLibrary) {
  EXPECT_NEAR(fractal_ineq::gamma(1.5), std::sqrt(M_PI) / 2.0, 1e-13);
  double fact = 1.0;
  for (int n = 1; n <= 10; ++n) {
    if (n > 1) fact *= n - 1;
    EXPECT_NEAR(fractal_ineq::gamma(n), fact, 1e-12 * fact) << "n = " << n;
  }
  for (double x = 0.1; x <= 10.0; x += 0.173) {
    const double ref = oracles::gamma(x);
    EXPECT_NEAR(fractal_ineq::gamma(x), ref, 1e-12 * std::fabs(ref)) << "x = " << x;
  }
}

TEST(Gamma, RejectsNonPositiveArguments) {
  EXPECT_THROW(fractal_ineq::gamma(0.0), input_error);
  EXPECT_THROW(fractal_ineq::gamma(-1.0), input_error);
  EXPECT_THROW(fractal_ineq::gamma(std::numeric_limits<double>::infinity()),
               input_error);
}

TEST(GammaRatio, AgreesWithTheOracleAndValidates) {
  const AlphaCtx ctx(0.5);
  for (double k = 0.0; k <= 4.0; k += 0.5) {
    for (double m = 0.0; m <= 4.0; m += 0.5) {
      const double ref = oracles::gamma(1.0 + 0.5 * k) / oracles::gamma(1.0 + 0.5 * m);
      EXPECT_NEAR(gamma_ratio(k, m, ctx), ref, 1e-12 * std::fabs(ref));
    }
  }
  EXPECT_THROW(gamma_ratio(-1.0, 0.0, ctx), input_error);
}

TEST(AlphaPow, DefaultConventionRequiresNonnegativeBase) {
  const AlphaCtx ctx(0.5);
  EXPECT_DOUBLE_EQ(alpha_pow(4.0, 2.0, ctx), std::pow(4.0, 1.0));
  EXPECT_DOUBLE_EQ(alpha_pow(0.0, 0.0, ctx), 1.0);
  EXPECT_THROW(alpha_pow(-1.0, 2.0, ctx), eval_domain_error);
  EXPECT_THROW(alpha_pow(1.0, -1.0, ctx), input_error);
}

TEST(AlphaPow, EvenPowerConventionCoversNegativeBases) {
  const AlphaCtx ctx(0.5);
  // (x^2)^alpha at x = -3: |x|^(2 alpha) = 3.
  EXPECT_NEAR(alpha_pow(-3.0, 2.0, ctx, true), 3.0, 1e-15);
  EXPECT_NEAR(alpha_pow(-3.0, 2.0, ctx, true), alpha_pow(3.0, 2.0, ctx, true), 0.0);
  EXPECT_THROW(alpha_pow(-3.0, 3.0, ctx, true), input_error);
  EXPECT_THROW(alpha_pow(-3.0, 1.5, ctx, true), input_error);
}

TEST(HHConstant, ReducesToOneOverSPlusOneClassically) {
  const AlphaCtx one(1.0);
  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    // Gamma(1+s) Gamma(2) / Gamma(2+s) = 1/(s+1).
    EXPECT_NEAR(hh_constant(s, one), 1.0 / (s + 1.0), 1e-13);
  }
  const AlphaCtx half(0.5);
  const double ref = oracles::gamma(1.25) * oracles::gamma(1.5) / oracles::gamma(1.75);
  EXPECT_NEAR(hh_constant(0.5, half), ref, 1e-13);
  EXPECT_THROW(hh_constant(0.0, one), input_error);
  EXPECT_THROW(hh_constant(1.5, one), input_error);
}

TEST(FractalScalar, RejectsNonFiniteMagnitudes) {
  const AlphaCtx ctx(0.7);
  EXPECT_NO_THROW(FractalScalar(2.0, ctx));
  EXPECT_THROW(FractalScalar(std::nan(""), ctx), numeric_error);
}
