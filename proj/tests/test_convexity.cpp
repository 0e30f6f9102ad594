#include <gtest/gtest.h>

#include <cstdlib>

#include "fractal_ineq/convexity.hpp"
#include "fractal_ineq/json_io.hpp"
#include "oracles.hpp"

using namespace fractal_ineq;

namespace {

ConvexityQuery base_query(FnPtr fn, double alpha, double lo = 0.0, double hi = 1.0) {
  ConvexityQuery q;
  q.fn = std::move(fn);
  q.region = make_interval_region(lo, hi);
  q.alpha = alpha;
  q.budget = Budget{24, 4000, 9};
  return q;
}

FnPtr example1_fn() {
  PiecewiseNode pw;
  pw.pieces.push_back({Guard{1, Guard::Op::Lt, 1.0}, make_fn({MonoNode{1.0, {3.0, 0.0}}})});
  pw.pieces.push_back({Guard{1, Guard::Op::Ge, 1.0}, make_fn({MonoNode{1.0, {1.0, 3.0}}})});
  return make_fn({std::move(pw)});
}

}  // namespace

TEST(GeneralizedConvex, CertifiesFractalMonomials) {
  for (double k : {1.0, 2.0}) {
    const auto cert = check_generalized_convex(
        base_query(fn_from_poly(FractalPoly::monomial(0.5, 1.0, k)), 0.5));
    EXPECT_EQ(cert.status, CertStatus::NoCounterexampleFound) << "k = " << k;
  }
}

TEST(GeneralizedConvex, RefutesAConcaveClassicalFunction) {
  ConvexityQuery q = base_query(make_fn({CPolyNode{{0.0, 0.0, -1.0}}}), 1.0, 0.0, 2.0);
  const auto cert = check_generalized_convex(q);
  ASSERT_EQ(cert.status, CertStatus::Counterexample);
  ASSERT_TRUE(cert.witness.has_value());
  std::string why;
  EXPECT_TRUE(verify_witness(cert, q, &why)) << why;
  // The classical oracle agrees the function is not convex here.
  EXPECT_FALSE(oracles::convex_on_grid([](double x) { return -x * x; }, 0.0, 2.0));
}

TEST(GeneralizedConvex, AgreesWithTheClassicalOracleAtAlphaOne) {
  oracles::SplitMix64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const double c2 = rng.uniform(-1.0, 1.0);
    const double c1 = rng.uniform(-1.0, 1.0);
    ConvexityQuery q =
        base_query(make_fn({CPolyNode{{0.0, c1, c2}}}), 1.0, 0.0, 2.0);
    q.budget.seed = rng.next();
    const bool oracle = oracles::convex_on_grid(
        [&](double x) { return c1 * x + c2 * x * x; }, 0.0, 2.0, 48);
    const auto cert = check_generalized_convex(q);
    EXPECT_EQ(cert.status == CertStatus::NoCounterexampleFound, oracle)
        << "c1=" << c1 << " c2=" << c2;
  }
}

TEST(SConvex, SecondSenseAcceptsPowersAndSenseIsValidated) {
  ConvexityQuery q = base_query(fn_from_poly(FractalPoly::monomial(0.5, 1.0, 2.0)), 0.5);
  q.s = 0.5;
  EXPECT_EQ(check_s_convex(q, 2).status, CertStatus::NoCounterexampleFound);
  EXPECT_THROW(check_s_convex(q, 3), input_error);
  // Negative-domain regions are outside both s-classes.
  ConvexityQuery neg = q;
  neg.region = make_box({-1.0}, {1.0});
  neg.fn = make_fn({CPolyNode{{0.0, 0.0, 1.0}}});
  neg.alpha = 1.0;
  EXPECT_THROW(check_s_convex(neg, 2), input_error);
}

TEST(SConvex, ClassicalSquareIsSConvexBothSenses) {
  ConvexityQuery q = base_query(make_fn({CPolyNode{{0.0, 0.0, 1.0}}}), 1.0);
  q.s = 0.5;
  EXPECT_EQ(check_s_convex(q, 1).status, CertStatus::NoCounterexampleFound);
  EXPECT_EQ(check_s_convex(q, 2).status, CertStatus::NoCounterexampleFound);
}

TEST(Quasiconvex, MonotoneAndValleyShapesPass) {
  EXPECT_EQ(check_quasiconvex(
                base_query(fn_from_poly(FractalPoly::monomial(0.5, 1.0, 1.0)), 0.5),
                QuasiVariant::Plain)
                .status,
            CertStatus::NoCounterexampleFound);
  EXPECT_EQ(check_quasiconvex(
                base_query(make_fn({CPolyNode{{1.0, -2.0, 1.0}}}), 1.0, 0.0, 2.0),
                QuasiVariant::Plain)
                .status,
            CertStatus::NoCounterexampleFound);
}

TEST(Quasiconvex, ValleyStepPassesAndHillStepFails) {
  // Indicator-style steps: 1,0,1 is a valley (quasiconvex), 0,1,0 is a hill.
  PiecewiseNode valley;
  valley.pieces.push_back({Guard{0, Guard::Op::Lt, 0.7}, make_fn({CPolyNode{{1.0}}})});
  valley.pieces.push_back({Guard{0, Guard::Op::Lt, 1.3}, make_fn({CPolyNode{{0.0}}})});
  valley.pieces.push_back({Guard{0, Guard::Op::Ge, 1.3}, make_fn({CPolyNode{{1.0}}})});
  EXPECT_EQ(check_quasiconvex(base_query(make_fn({std::move(valley)}), 1.0, 0.0, 2.0),
                              QuasiVariant::Plain)
                .status,
            CertStatus::NoCounterexampleFound);

  PiecewiseNode hill;
  hill.pieces.push_back({Guard{0, Guard::Op::Lt, 0.7}, make_fn({CPolyNode{{0.0}}})});
  hill.pieces.push_back({Guard{0, Guard::Op::Lt, 1.3}, make_fn({CPolyNode{{1.0}}})});
  hill.pieces.push_back({Guard{0, Guard::Op::Ge, 1.3}, make_fn({CPolyNode{{0.0}}})});
  ConvexityQuery q = base_query(make_fn({std::move(hill)}), 1.0, 0.0, 2.0);
  const auto cert = check_quasiconvex(q, QuasiVariant::Plain);
  ASSERT_EQ(cert.status, CertStatus::Counterexample);
  q.tag = ClassTag::GeneralizedQuasiconvex;
  std::string why;
  EXPECT_TRUE(verify_witness(cert, q, &why)) << why;
}

TEST(GECF, IdentityEMapReducesToGeneralizedConvexity) {
  ConvexityQuery q = base_query(fn_from_poly(FractalPoly::monomial(0.5, 1.0, 2.0)), 0.5);
  q.emap = identity_emap(1);
  EXPECT_EQ(check_gECF(q).status, CertStatus::NoCounterexampleFound);
  EXPECT_EQ(check_generalized_convex(q).status, CertStatus::NoCounterexampleFound);

  // And a refuted function stays refuted through the identity E-map.
  ConvexityQuery bad = base_query(make_fn({CPolyNode{{0.0, 0.0, -1.0}}}), 1.0, 0.0, 2.0);
  bad.emap = identity_emap(1);
  EXPECT_EQ(check_gECF(bad).status, CertStatus::Counterexample);
}

TEST(GECF, MissingEMapIsRejected) {
  ConvexityQuery q = base_query(fn_from_poly(FractalPoly::monomial(0.5, 1.0, 2.0)), 0.5);
  EXPECT_THROW(check_gECF(q), input_error);
}

TEST(GECF, PlaneExampleCertifiesAndItsPlainConvexityRefutes) {
  ConvexityQuery q;
  q.fn = example1_fn();
  q.emap = EMap{2, AffineMap{{{0.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}}};
  q.region = make_simplex({{0.0, 0.0}, {0.0, 3.0}, {2.0, 1.0}}, true);
  q.alpha = 0.5;
  q.budget = Budget{24, 12000, 5};
  EXPECT_EQ(check_gECF(q).status, CertStatus::NoCounterexampleFound);

  ConvexityQuery plain = q;
  plain.emap.reset();
  plain.tag = ClassTag::GeneralizedConvex;
  const auto cert = check_generalized_convex(plain);
  ASSERT_EQ(cert.status, CertStatus::Counterexample);
  std::string why;
  EXPECT_TRUE(verify_witness(cert, plain, &why)) << why;
}

TEST(StrictQuasiconcave, ValleyFailsTheMinFormAndMonotoneSurvives) {
  // The strict flag flips the search to the "blend above min" direction: a
  // valley dips below the endpoint minimum, a monotone function never does.
  ConvexityQuery valley = base_query(make_fn({CPolyNode{{1.0, -2.0, 1.0}}}), 1.0, 0.0, 2.0);
  EXPECT_EQ(check_quasiconvex(valley, QuasiVariant::Plain, true).status,
            CertStatus::Counterexample);
  ConvexityQuery line = base_query(make_fn({CPolyNode{{0.0, 1.0}}}), 1.0, 0.0, 2.0);
  EXPECT_EQ(check_quasiconvex(line, QuasiVariant::Plain, true).status,
            CertStatus::NoCounterexampleFound);
}

TEST(Certificates, SameSeedIsByteDeterministic) {
  ConvexityQuery q = base_query(example1_fn(), 0.5);
  q.region = make_simplex({{0.0, 0.0}, {0.0, 3.0}, {2.0, 1.0}}, true);
  q.budget = Budget{16, 3000, 42};
  const auto a = check_generalized_convex(q);
  const auto b = check_generalized_convex(q);
  EXPECT_EQ(certificate_to_json(a).dump(), certificate_to_json(b).dump());
}

TEST(Certificates, WitnessIsIndependentOfWorkerCount) {
  ConvexityQuery q = base_query(example1_fn(), 0.5);
  q.region = make_simplex({{0.0, 0.0}, {0.0, 3.0}, {2.0, 1.0}}, true);
  q.budget = Budget{16, 3000, 42};
  const auto solo = check_generalized_convex(q);
  ::setenv("FRACTAL_INEQ_THREADS", "4", 1);
  const auto pooled = check_generalized_convex(q);
  ::unsetenv("FRACTAL_INEQ_THREADS");
  EXPECT_EQ(certificate_to_json(solo).dump(), certificate_to_json(pooled).dump());
}

TEST(Certificates, FabricatedWitnessesAreRejectedWithAReason) {
  ConvexityQuery q = base_query(make_fn({CPolyNode{{0.0, 0.0, -1.0}}}), 1.0, 0.0, 2.0);
  Certificate cert = check_generalized_convex(q);
  ASSERT_EQ(cert.status, CertStatus::Counterexample);
  ASSERT_TRUE(cert.witness.has_value());

  Certificate outside = cert;
  outside.witness->y1 = {5.0};
  std::string why;
  EXPECT_FALSE(verify_witness(outside, q, &why));
  EXPECT_EQ(why, "witness outside region");

  Certificate tampered = cert;
  Witness forged = cert.witness.value();
  forged.violation += 0.5;
  tampered.witness = forged;
  EXPECT_FALSE(verify_witness(tampered, q, &why));
  EXPECT_EQ(why, "stored violation does not reproduce");

  Certificate empty;
  EXPECT_FALSE(verify_witness(empty, q, &why));
  EXPECT_EQ(why, "certificate carries no counterexample");
}

TEST(Budgets, AreValidated) {
  ConvexityQuery q = base_query(fn_from_poly(FractalPoly::monomial(0.5, 1.0, 2.0)), 0.5);
  q.budget.grid = 0;
  EXPECT_THROW(check_generalized_convex(q), input_error);
  q.budget = Budget{8, 100, 1};
  q.tolerance = -1.0;
  EXPECT_THROW(check_generalized_convex(q), input_error);
}
