#include <gtest/gtest.h>

#include <cmath>

#include "fractal_ineq/evaluable.hpp"
#include "oracles.hpp"

using namespace fractal_ineq;

namespace {

const EvalEnv kHalf{0.5, false};
const EvalEnv kOne{1.0, false};

FnPtr two_piece_example() {
  // x1^(3a) below the x2 = 1 line, x1^a x2^(3a) on and above it.
  PiecewiseNode pw;
  pw.pieces.push_back({Guard{1, Guard::Op::Lt, 1.0}, make_fn({MonoNode{1.0, {3.0, 0.0}}})});
  pw.pieces.push_back({Guard{1, Guard::Op::Ge, 1.0}, make_fn({MonoNode{1.0, {1.0, 3.0}}})});
  return make_fn({std::move(pw)});
}

}  // namespace

TEST(EvalFn, MonomialAndClassicalPolynomialNodes) {
  const FnPtr mono = make_fn({MonoNode{2.0, {1.0, 3.0}}});
  // 2 * x1^(0.5) * x2^(1.5) at (4, 9): 2 * 2 * 27 = 108.
  EXPECT_NEAR(eval_fn(mono, {4.0, 9.0}, kHalf), 108.0, 1e-10);
  EXPECT_THROW(eval_fn(mono, {-1.0, 1.0}, kHalf), eval_domain_error);

  const FnPtr cp = make_fn({CPolyNode{{1.0, -2.0, 1.0}}});  // (x-1)^2
  EXPECT_DOUBLE_EQ(eval_fn(cp, {-3.0}, kHalf), 16.0);  // defined for negative x
}

TEST(EvalFn, PolyNodePinsItsAlpha) {
  const FnPtr p = fn_from_poly(FractalPoly::monomial(0.5, 1.0, 2.0));
  EXPECT_NEAR(eval_fn(p, {3.0}, kHalf), 3.0, 1e-13);
  EXPECT_THROW(eval_fn(p, {3.0}, kOne), input_error);
}

TEST(EvalFn, PiecewiseGuardsSelectByStrictness) {
  const FnPtr f = two_piece_example();
  // Below the line: x1^(3*0.5) = x1^1.5.
  EXPECT_NEAR(eval_fn(f, {4.0, 0.5}, kHalf), 8.0, 1e-12);
  // On the boundary the >= piece wins.
  EXPECT_NEAR(eval_fn(f, {4.0, 1.0}, kHalf), 2.0, 1e-12);
  // No matching guard is a domain error, not a silent zero.
  PiecewiseNode gap;
  gap.pieces.push_back({Guard{0, Guard::Op::Lt, 0.0}, make_fn({CPolyNode{{1.0}}})});
  const FnPtr g = make_fn({std::move(gap)});
  EXPECT_THROW(eval_fn(g, {1.0}, kOne), eval_domain_error);
}

TEST(EvalFn, CompositeNodes) {
  const FnPtr inner = make_fn({CPolyNode{{0.0, 2.0}}});          // 2x
  const FnPtr outer = make_fn({CPolyNode{{1.0, 0.0, 1.0}}});     // 1 + u^2
  EXPECT_DOUBLE_EQ(eval_fn(make_fn({ComposeNode{outer, inner}}), {3.0}, kOne), 37.0);

  WSumNode ws;
  ws.summands.push_back({0.5, make_fn({CPolyNode{{0.0, 1.0}}})});
  ws.summands.push_back({2.0, make_fn({CPolyNode{{1.0}}})});
  EXPECT_DOUBLE_EQ(eval_fn(make_fn({std::move(ws)}), {4.0}, kOne), 4.0);

  SupFamilyNode sup;
  sup.fns.push_back(make_fn({CPolyNode{{0.0, 1.0}}}));   // x
  sup.fns.push_back(make_fn({CPolyNode{{1.0, -1.0}}}));  // 1 - x
  EXPECT_DOUBLE_EQ(eval_fn(make_fn({std::move(sup)}), {0.25}, kOne), 0.75);

  const FnPtr shifted = make_fn({AffinePreNode{outer, 2.0, -1.0}});  // 1 + (2x-1)^2
  EXPECT_DOUBLE_EQ(eval_fn(shifted, {1.0}, kOne), 2.0);
}

TEST(EvalFn, ArityIsChecked) {
  const FnPtr mono = make_fn({MonoNode{1.0, {1.0, 1.0}}});
  EXPECT_EQ(fn_arity(*mono), 2);
  EXPECT_ANY_THROW(eval_fn(mono, {1.0}, kOne));
}

TEST(EMap, AffineComponentwiseIdentity) {
  const EMap proj{2, AffineMap{{{0.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}}};
  const Point y = apply_emap(proj, {2.0, 1.5}, kHalf);
  ASSERT_EQ(y.size(), 2u);
  EXPECT_DOUBLE_EQ(y[0], 0.0);
  EXPECT_DOUBLE_EQ(y[1], 1.5);

  const EMap neg_sq{1, ComponentwiseMap{{make_fn({CPolyNode{{0.0, 0.0, -1.0}}})}}};
  EXPECT_DOUBLE_EQ(apply_emap(neg_sq, {2.0}, kOne)[0], -4.0);

  EXPECT_DOUBLE_EQ(apply_emap(identity_emap(1), {0.3}, kOne)[0], 0.3);
  EXPECT_THROW(apply_emap(proj, {1.0}, kHalf), input_error);
}

TEST(Region, BoxMembershipAndMargin) {
  const RegionSpec box = make_box({0.0, 0.0}, {1.0, 2.0});
  EXPECT_TRUE(region_contains(box, {0.5, 1.0}));
  EXPECT_TRUE(region_contains(box, {0.0, 2.0}));
  EXPECT_FALSE(region_contains(box, {1.1, 1.0}));
  EXPECT_LT(region_margin(box, {0.5, 1.0}), 0.0);
  EXPECT_NEAR(region_margin(box, {1.25, 1.0}), 0.25, 1e-12);
  EXPECT_THROW(make_box({0.0}, {0.0}), input_error);
}

TEST(Region, SimplexBarycentricMembership) {
  const RegionSpec tri = make_simplex({{0.0, 0.0}, {0.0, 3.0}, {2.0, 1.0}}, true);
  // Interior point: mu = (1/3, 1/6, 1/2), all positive.
  EXPECT_TRUE(region_contains(tri, {1.0, 1.0}));
  EXPECT_LT(region_margin(tri, {1.0, 1.0}), 0.0);
  // A vertex and an edge midpoint sit on the closed boundary.
  EXPECT_TRUE(region_contains(tri, {0.0, 0.0}));
  EXPECT_TRUE(region_contains(tri, {1.0, 0.5}));
  EXPECT_FALSE(region_contains(tri, {2.0, 2.0}));

  const RegionSpec open_tri = make_simplex({{0.0, 0.0}, {0.0, 3.0}, {2.0, 1.0}}, false);
  EXPECT_TRUE(region_contains(open_tri, {1.0, 1.0}));
  EXPECT_FALSE(region_contains(open_tri, {0.0, 0.0}));
  EXPECT_FALSE(region_contains(open_tri, {1.0, 0.5}));
}

TEST(Region, LowerDimensionalSimplexUsesTheHullResidual) {
  // A segment in the plane: membership needs both the residual and the
  // barycentric range.
  const RegionSpec seg = make_simplex({{0.0, 0.0}, {2.0, 2.0}}, true);
  EXPECT_TRUE(region_contains(seg, {1.0, 1.0}));
  EXPECT_FALSE(region_contains(seg, {1.0, 1.2}));
  EXPECT_FALSE(region_contains(seg, {3.0, 3.0}));
}

TEST(Region, HalfspacesConjunction) {
  // x + y <= 1, x >= 0, y >= 0 inside the unit square envelope.
  const HalfspacesRegion hs{{{1.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}},
                            {1.0, 0.0, 0.0},
                            BoxRegion{{0.0, 0.0}, {1.0, 1.0}}};
  const RegionSpec r{2, hs};
  EXPECT_TRUE(region_contains(r, {0.25, 0.25}));
  EXPECT_TRUE(region_contains(r, {0.5, 0.5}));
  EXPECT_FALSE(region_contains(r, {0.75, 0.5}));
}

TEST(Region, DegenerateSimplexIsRejectedAtQueryTime) {
  const RegionSpec bad = make_simplex({{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}}, true);
  EXPECT_THROW(region_contains(bad, {0.5, 0.5}), input_error);
}
