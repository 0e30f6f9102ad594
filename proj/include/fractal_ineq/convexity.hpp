#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "fractal_ineq/certificate.hpp"

namespace fractal_ineq {

enum class ClassTag {
  GeneralizedConvex,
  SConvex1,
  SConvex2,
  GeneralizedQuasiconvex,
  EConvexFn,
  GECF,
  GEQuasiconvex,
  EConvexSet,
};

struct ConvexityQuery {
  ClassTag tag = ClassTag::GeneralizedConvex;
  FnPtr fn;                    // absent for the set check
  std::optional<EMap> emap;    // absent for the plain classes
  RegionSpec region;
  double alpha = 1.0;
  double s = 1.0;
  Budget budget;
  double tolerance = 1e-9;
  bool even_power = false;
  bool strict_concave = false;  // quasi checks: flip to strict "> min" mode

  EvalEnv env() const { return EvalEnv{alpha, even_power}; }
};

namespace detail {

inline bool tag_uses_s(ClassTag t) {
  return t == ClassTag::SConvex1 || t == ClassTag::SConvex2;
}

inline bool tag_uses_emap(ClassTag t) {
  return t == ClassTag::EConvexFn || t == ClassTag::GECF ||
         t == ClassTag::GEQuasiconvex || t == ClassTag::EConvexSet;
}

inline bool tag_uses_fn(ClassTag t) { return t != ClassTag::EConvexSet; }

inline void validate_query(const ConvexityQuery& q) {
  AlphaCtx check(q.alpha);
  (void)check;
  q.budget.validate();
  if (!(q.tolerance > 0.0)) throw input_error("tolerance must be > 0");
  if (tag_uses_s(q.tag) && (!(q.s > 0.0) || !(q.s <= 1.0))) {
    throw input_error("s must lie in (0,1] for the s-convex classes");
  }
  if (tag_uses_fn(q.tag) && !q.fn) throw input_error("query requires a function");
  if (tag_uses_emap(q.tag) && !q.emap) throw input_error("query requires an E-map");
}

inline bool region_nonneg(const RegionSpec& r) {
  return std::visit(
      [](const auto& reg) -> bool {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, BoxRegion>) {
          for (double v : reg.lo) {
            if (v < 0.0) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, SimplexRegion>) {
          for (const auto& vert : reg.verts) {
            for (double v : vert) {
              if (v < 0.0) return false;
            }
          }
          return true;
        } else {
          for (double v : reg.bbox.lo) {
            if (v < 0.0) return false;
          }
          return true;
        }
      },
      r.region);
}

inline bool has_piecewise(const EvaluableFn& fn) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiecewiseNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, AffinePreNode>) {
          return has_piecewise(*n.fn);
        } else if constexpr (std::is_same_v<T, WSumNode>) {
          for (const auto& s : n.summands) {
            if (has_piecewise(*s.fn)) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, SupFamilyNode>) {
          for (const auto& f : n.fns) {
            if (has_piecewise(*f)) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          return has_piecewise(*n.outer) || has_piecewise(*n.inner);
        } else {
          return false;
        }
      },
      fn.node);
}

inline Point blend(const Point& a, const Point& b, double wa, double wb) {
  Point out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = wa * a[i] + wb * b[i];
  return out;
}

struct Sides {
  double lhs;
  double rhs;
  double violation;
};

// One evaluator per class keeps the search predicate and verify_witness in
// exact agreement.
inline Sides eval_sides(const ConvexityQuery& q, const Point& y1, const Point& y2,
                        double eta) {
  const EvalEnv env = q.env();
  const double a = q.alpha;
  switch (q.tag) {
    case ClassTag::GeneralizedConvex: {
      const double lhs = eval_fn(q.fn, blend(y1, y2, eta, 1.0 - eta), env);
      const double rhs = std::pow(eta, a) * eval_fn(q.fn, y1, env) +
                         std::pow(1.0 - eta, a) * eval_fn(q.fn, y2, env);
      return {lhs, rhs, lhs - rhs};
    }
    case ClassTag::SConvex1: {
      const double eta2 = std::pow(1.0 - std::pow(eta, q.s), 1.0 / q.s);
      const double lhs = eval_fn(q.fn, blend(y1, y2, eta, eta2), env);
      const double rhs = std::pow(eta, q.s * a) * eval_fn(q.fn, y1, env) +
                         std::pow(eta2, q.s * a) * eval_fn(q.fn, y2, env);
      return {lhs, rhs, lhs - rhs};
    }
    case ClassTag::SConvex2: {
      const double lhs = eval_fn(q.fn, blend(y1, y2, eta, 1.0 - eta), env);
      const double rhs = std::pow(eta, q.s * a) * eval_fn(q.fn, y1, env) +
                         std::pow(1.0 - eta, q.s * a) * eval_fn(q.fn, y2, env);
      return {lhs, rhs, lhs - rhs};
    }
    case ClassTag::GeneralizedQuasiconvex: {
      const double lhs = eval_fn(q.fn, blend(y1, y2, eta, 1.0 - eta), env);
      const double g1 = eval_fn(q.fn, y1, env);
      const double g2 = eval_fn(q.fn, y2, env);
      if (q.strict_concave) {
        const double rhs = std::min(g1, g2);
        return {lhs, rhs, rhs - lhs};
      }
      const double rhs = std::max(g1, g2);
      return {lhs, rhs, lhs - rhs};
    }
    case ClassTag::EConvexFn: {
      const Point u1 = apply_emap(*q.emap, y1, env);
      const Point u2 = apply_emap(*q.emap, y2, env);
      const double lhs = eval_fn(q.fn, blend(u1, u2, eta, 1.0 - eta), env);
      const double rhs =
          eta * eval_fn(q.fn, u1, env) + (1.0 - eta) * eval_fn(q.fn, u2, env);
      return {lhs, rhs, lhs - rhs};
    }
    case ClassTag::GECF: {
      const Point u1 = apply_emap(*q.emap, y1, env);
      const Point u2 = apply_emap(*q.emap, y2, env);
      const double lhs = eval_fn(q.fn, blend(u1, u2, eta, 1.0 - eta), env);
      const double rhs = std::pow(eta, a) * eval_fn(q.fn, u1, env) +
                         std::pow(1.0 - eta, a) * eval_fn(q.fn, u2, env);
      return {lhs, rhs, lhs - rhs};
    }
    case ClassTag::GEQuasiconvex: {
      const Point u1 = apply_emap(*q.emap, y1, env);
      const Point u2 = apply_emap(*q.emap, y2, env);
      const double lhs = eval_fn(q.fn, blend(u1, u2, eta, 1.0 - eta), env);
      const double g1 = eval_fn(q.fn, u1, env);
      const double g2 = eval_fn(q.fn, u2, env);
      if (q.strict_concave) {
        const double rhs = std::min(g1, g2);
        return {lhs, rhs, rhs - lhs};
      }
      const double rhs = std::max(g1, g2);
      return {lhs, rhs, lhs - rhs};
    }
    case ClassTag::EConvexSet: {
      const Point u1 = apply_emap(*q.emap, y1, env);
      const Point u2 = apply_emap(*q.emap, y2, env);
      const Point z = blend(u1, u2, eta, 1.0 - eta);
      const double margin = region_margin(q.region, z);
      const bool outside = !region_contains(q.region, z);
      // Boundary misses have near-zero geometric margin; clamp so reported
      // violations always clear the tolerance gate.
      const double v = outside ? std::max(margin, 2.0 * q.tolerance) : margin;
      return {margin, 0.0, v};
    }
  }
  throw input_error("unknown convexity class");
}

// Endpoint mixing weights are dropped exactly when the definition quantifies
// over the open interval.
inline bool eta_includes_endpoints(const ConvexityQuery& q) {
  switch (q.tag) {
    case ClassTag::GECF:
      return false;
    case ClassTag::GeneralizedQuasiconvex:
    case ClassTag::GEQuasiconvex:
      return !q.strict_concave;
    default:
      return true;
  }
}

inline Certificate run_convexity_search(const ConvexityQuery& q) {
  validate_query(q);
  if (tag_uses_fn(q.tag) && has_piecewise(*q.fn)) {
    assert_piecewise_total(*q.fn, q.region, q.env());
  }
  const SampleSpace space = make_region_space(q.region, q.budget.grid);
  const std::vector<PairCand> pairs =
      candidate_pairs(space, q.budget.samples, q.budget.seed);
  const std::vector<double> etas =
      eta_grid(q.budget.grid, eta_includes_endpoints(q));
  return run_pair_search(
      pairs, etas,
      [&q](const Point& y1, const Point& y2, double eta) -> std::optional<Witness> {
        const Sides s = eval_sides(q, y1, y2, eta);
        if (s.violation > q.tolerance) {
          return Witness{y1, y2, eta, s.lhs, s.rhs, s.violation};
        }
        return std::nullopt;
      },
      q.budget);
}

}  // namespace detail

inline Certificate check_generalized_convex(const ConvexityQuery& q) {
  ConvexityQuery qq = q;
  qq.tag = ClassTag::GeneralizedConvex;
  return detail::run_convexity_search(qq);
}

// sense 1: eta2 = (1-eta1^s)^(1/s) so eta1^s + eta2^s = 1;
// sense 2: eta2 = 1 - eta1. Both classes live on nonnegative domains.
inline Certificate check_s_convex(const ConvexityQuery& q, int sense) {
  if (sense != 1 && sense != 2) throw input_error("s-convex sense must be 1 or 2");
  ConvexityQuery qq = q;
  qq.tag = sense == 1 ? ClassTag::SConvex1 : ClassTag::SConvex2;
  if (!detail::region_nonneg(qq.region)) {
    throw input_error("s-convex classes require a nonnegative-domain region");
  }
  return detail::run_convexity_search(qq);
}

inline Certificate check_gECF(const ConvexityQuery& q) {
  ConvexityQuery qq = q;
  qq.tag = ClassTag::GECF;
  return detail::run_convexity_search(qq);
}

inline Certificate check_E_convex_fn(const ConvexityQuery& q) {
  ConvexityQuery qq = q;
  qq.tag = ClassTag::EConvexFn;
  return detail::run_convexity_search(qq);
}

enum class QuasiVariant { Plain, E };

inline Certificate check_quasiconvex(const ConvexityQuery& q, QuasiVariant variant,
                                     bool strict_concave = false) {
  ConvexityQuery qq = q;
  qq.tag = variant == QuasiVariant::Plain ? ClassTag::GeneralizedQuasiconvex
                                          : ClassTag::GEQuasiconvex;
  qq.strict_concave = strict_concave;
  return detail::run_convexity_search(qq);
}

inline Certificate check_E_convex_set(const RegionSpec& region, const EMap& e,
                                      const Budget& budget, double tol,
                                      double alpha = 1.0, bool even_power = false) {
  ConvexityQuery q;
  q.tag = ClassTag::EConvexSet;
  q.emap = e;
  q.region = region;
  q.alpha = alpha;
  q.budget = budget;
  q.tolerance = tol;
  q.even_power = even_power;
  return detail::run_convexity_search(q);
}

inline Certificate check_E_image_subset(const RegionSpec& region, const EMap& e,
                                        const Budget& budget, double tol = 1e-9,
                                        double alpha = 1.0, bool even_power = false) {
  budget.validate();
  if (!(tol > 0.0)) throw input_error("tolerance must be > 0");
  const EvalEnv env{alpha, even_power};
  const SampleSpace space = make_region_space(region, budget.grid);
  const std::vector<Point> points =
      candidate_points(space, budget.samples, budget.seed);
  return run_point_search(
      points,
      [&](const Point& r) -> std::optional<Witness> {
        const Point u = apply_emap(e, r, env);
        if (region_contains(region, u)) return std::nullopt;
        const double margin = region_margin(region, u);
        Witness w;
        w.y1 = r;
        w.y2 = u;
        w.lhs = margin;
        w.rhs = 0.0;
        w.violation = std::max(margin, 2.0 * tol);
        return w;
      },
      budget);
}

// Re-evaluates the defining inequality at a stored witness. True iff the
// recorded violation reproduces to 1e-12 and still clears the tolerance.
// Witnesses outside the query region fail with a distinct reason.
inline bool verify_witness(const Certificate& c, const ConvexityQuery& q,
                           std::string* why = nullptr) {
  const auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  if (c.status != CertStatus::Counterexample || !c.witness) {
    return fail("certificate carries no counterexample");
  }
  const Witness& w = *c.witness;
  if (!region_contains(q.region, w.y1) ||
      (q.tag != ClassTag::EConvexSet && !region_contains(q.region, w.y2))) {
    return fail("witness outside region");
  }
  if (q.tag == ClassTag::EConvexSet && !region_contains(q.region, w.y2)) {
    return fail("witness outside region");
  }
  const double eta = w.eta.value_or(0.0);
  detail::Sides s{};
  try {
    s = detail::eval_sides(q, w.y1, w.y2, eta);
  } catch (const std::exception&) {
    return fail("witness is not evaluable");
  }
  if (std::fabs(s.violation - w.violation) > 1e-12) {
    return fail("stored violation does not reproduce");
  }
  if (!(s.violation > q.tolerance)) {
    return fail("violation does not clear the tolerance");
  }
  if (why) why->clear();
  return true;
}

}  // namespace fractal_ineq
