#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "fractal_ineq/certificate.hpp"
#include "fractal_ineq/convexity.hpp"

namespace fractal_ineq {

// Point of R^n x R^alpha: base coordinates plus the height magnitude r
// standing for r^alpha.
struct EAlphaPoint {
  Point x;
  double r = 0.0;
};

// Subset of R^n x R^alpha: a base region and a height predicate over r.
// The epigraph variant's g is composed with whatever E-map the check
// supplies, matching epi_{E^alpha}(g).
struct LiftedRegion {
  struct Epigraph {
    FnPtr fn;
  };
  struct RHalfspace {
    double min_r = 0.0;  // r >= min_r
  };
  struct ProductInterval {
    double lo = 0.0;
    double hi = 1.0;  // r in [lo, hi]
  };

  RegionSpec base;
  std::variant<Epigraph, RHalfspace, ProductInterval> height;
};

inline LiftedRegion epigraph_lift(RegionSpec base, FnPtr g) {
  return LiftedRegion{std::move(base), LiftedRegion::Epigraph{std::move(g)}};
}

// Membership in the E^alpha-epigraph: g(E(x)) <= r, boundary included with
// the same face tolerance the base regions use.
// Points with x outside the declared region are a domain error.
inline bool epigraph_membership(const FnPtr& g, const EMap& e, const EAlphaPoint& p,
                                const RegionSpec& region, const EvalEnv& env) {
  if (!region_contains(region, p.x)) {
    std::ostringstream os;
    os << "epigraph membership: base point outside region (";
    for (size_t i = 0; i < p.x.size(); ++i) os << (i ? ", " : "") << p.x[i];
    os << ")";
    throw eval_domain_error(os.str());
  }
  return eval_fn(g, apply_emap(e, p.x, env), env) - p.r <= kFaceTol;
}

enum class LevelSetMode { Composed, Restricted };

// Lower level set membership: L_r(g o E) tests g(E(x)) <= r, the restricted
// form L_r(g~) tests g(x) <= r for x already living in E(B).
inline bool level_set_membership(const FnPtr& g, const EMap& e, const Point& x,
                                 double r, LevelSetMode mode, const EvalEnv& env) {
  const double v = mode == LevelSetMode::Composed
                       ? eval_fn(g, apply_emap(e, x, env), env)
                       : eval_fn(g, x, env);
  return v <= r;
}

namespace detail {

inline double height_value(const LiftedRegion& s, const EMap& e, const Point& x,
                           const EvalEnv& env) {
  // Smallest admissible r at base point x (epigraph floor or interval floor).
  return std::visit(
      [&](const auto& h) -> double {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, LiftedRegion::Epigraph>) {
          return eval_fn(h.fn, apply_emap(e, x, env), env);
        } else if constexpr (std::is_same_v<T, LiftedRegion::RHalfspace>) {
          return h.min_r;
        } else {
          return h.lo;
        }
      },
      s.height);
}

inline double height_margin(const LiftedRegion& s, const EMap& e, const Point& x,
                            double r, const EvalEnv& env) {
  return std::visit(
      [&](const auto& h) -> double {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, LiftedRegion::Epigraph>) {
          return eval_fn(h.fn, apply_emap(e, x, env), env) - r;
        } else if constexpr (std::is_same_v<T, LiftedRegion::RHalfspace>) {
          return h.min_r - r;
        } else {
          return std::max(h.lo - r, r - h.hi);
        }
      },
      s.height);
}

}  // namespace detail

// Height comparisons tolerate kFaceTol: blending two heights that sit exactly
// on the floor can move the result by an ulp, and a strict test would report
// such a point as escaping the set.
inline bool lifted_contains(const LiftedRegion& s, const EMap& e, const EAlphaPoint& p,
                            const EvalEnv& env) {
  if (!region_contains(s.base, p.x)) return false;
  return detail::height_margin(s, e, p.x, p.r, env) <= kFaceTol;
}

inline double lifted_margin(const LiftedRegion& s, const EMap& e, const EAlphaPoint& p,
                            const EvalEnv& env) {
  const double base_m = region_margin(s.base, p.x);
  if (!region_contains(s.base, p.x)) return std::max(base_m, 0.0);
  return std::max(base_m, detail::height_margin(s, e, p.x, p.r, env));
}

namespace detail {

inline EAlphaPoint split_lifted(const Point& p) {
  EAlphaPoint out;
  out.x.assign(p.begin(), p.end() - 1);
  out.r = p.back();
  return out;
}

// Sample space over the lifted set: base draws plus one height uniform mapped
// onto [floor, floor + span] at the drawn base point. Every draw is a member.
inline SampleSpace make_lifted_space(const LiftedRegion& s, const EMap& e,
                                     const EvalEnv& env, int grid) {
  const SampleSpace base = make_region_space(s.base, grid);

  double span = 1.0;
  if (std::holds_alternative<LiftedRegion::Epigraph>(s.height)) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::vector<Point> probes = base.lattice;
    if (probes.empty()) probes = candidate_points(base, 256, 1);
    for (const Point& x : probes) {
      const double v = height_value(s, e, x, env);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (std::isfinite(hi - lo)) span = 1.0 + (hi - lo);
  } else if (const auto* pi = std::get_if<LiftedRegion::ProductInterval>(&s.height)) {
    span = pi->hi - pi->lo;
  } else {
    span = 4.0;
  }

  SampleSpace sp;
  sp.point_dim = base.point_dim + 1;
  sp.n_uniforms = base.n_uniforms + 1;
  const bool interval = std::holds_alternative<LiftedRegion::ProductInterval>(s.height);
  sp.from_uniforms = [s, e, env, base, span, interval](const double* u)
      -> std::optional<Point> {
    auto x = base.from_uniforms(u);
    if (!x) return std::nullopt;
    const double floor = height_value(s, e, *x, env);
    const double r = floor + u[base.n_uniforms] * span;
    Point p = std::move(*x);
    p.push_back(interval ? std::min(r, floor + span) : r);
    return p;
  };

  const double offsets[3] = {0.0, 0.5, 1.0};
  size_t stride = 1;
  while (base.lattice.size() / stride * 3 > kLatticeCap) ++stride;
  for (size_t i = 0; i < base.lattice.size(); i += stride) {
    const Point& x = base.lattice[i];
    const double floor = height_value(s, e, x, env);
    for (double f : offsets) {
      Point p = x;
      p.push_back(floor + f * span);
      sp.lattice.push_back(std::move(p));
    }
  }
  return sp;
}

template <typename Contains, typename Margin>
inline Certificate run_lifted_search(const SampleSpace& space, const EMap& e,
                                     double alpha, const Budget& budget, double tol,
                                     const EvalEnv& env, const Contains& contains,
                                     const Margin& margin) {
  const std::vector<PairCand> pairs =
      candidate_pairs(space, budget.samples, budget.seed);
  const std::vector<double> etas = eta_grid(budget.grid, true);
  return run_pair_search(
      pairs, etas,
      [&](const Point& p1, const Point& p2, double eta) -> std::optional<Witness> {
        const EAlphaPoint a = split_lifted(p1);
        const EAlphaPoint b = split_lifted(p2);
        const Point u1 = apply_emap(e, a.x, env);
        const Point u2 = apply_emap(e, b.x, env);
        EAlphaPoint z;
        z.x = blend(u1, u2, eta, 1.0 - eta);
        // Heights blend with the alpha-powered weights exactly as defined;
        // for alpha < 1 they do not sum to 1.
        z.r = std::pow(eta, alpha) * a.r + std::pow(1.0 - eta, alpha) * b.r;
        if (contains(z)) return std::nullopt;
        const double m = margin(z);
        Witness w;
        w.y1 = p1;
        w.y2 = p2;
        w.eta = eta;
        w.lhs = m;
        w.rhs = 0.0;
        w.violation = std::max(m, 2.0 * tol);
        return w;
      },
      budget);
}

}  // namespace detail

inline Certificate check_E_alpha_convex_set(const LiftedRegion& s, const EMap& e,
                                            double alpha, const Budget& budget,
                                            double tol, bool even_power = false) {
  AlphaCtx check(alpha);
  (void)check;
  budget.validate();
  if (!(tol > 0.0)) throw input_error("tolerance must be > 0");
  const EvalEnv env{alpha, even_power};
  const SampleSpace space = detail::make_lifted_space(s, e, env, budget.grid);
  return detail::run_lifted_search(
      space, e, alpha, budget, tol, env,
      [&](const EAlphaPoint& z) { return lifted_contains(s, e, z, env); },
      [&](const EAlphaPoint& z) { return lifted_margin(s, e, z, env); });
}

// Intersection closure: membership in every listed set; sampling runs over
// the first set filtered through the rest. Disjoint bases leave nothing to
// sample, which certifies vacuously.
inline Certificate check_intersection_closure(const std::vector<LiftedRegion>& parts,
                                              const EMap& e, double alpha,
                                              const Budget& budget, double tol = 1e-9,
                                              bool even_power = false) {
  if (parts.empty()) throw input_error("intersection requires at least one set");
  AlphaCtx check(alpha);
  (void)check;
  budget.validate();
  if (!(tol > 0.0)) throw input_error("tolerance must be > 0");
  const EvalEnv env{alpha, even_power};

  const auto in_all = [&](const EAlphaPoint& z) {
    for (const LiftedRegion& s : parts) {
      if (!lifted_contains(s, e, z, env)) return false;
    }
    return true;
  };
  const auto margin_all = [&](const EAlphaPoint& z) {
    double m = -std::numeric_limits<double>::infinity();
    for (const LiftedRegion& s : parts) m = std::max(m, lifted_margin(s, e, z, env));
    return m;
  };

  SampleSpace space = detail::make_lifted_space(parts[0], e, env, budget.grid);
  const auto raw = space.from_uniforms;
  space.from_uniforms = [raw, in_all](const double* u) -> std::optional<Point> {
    auto p = raw(u);
    if (!p) return std::nullopt;
    if (!in_all(detail::split_lifted(*p))) return std::nullopt;
    return p;
  };
  std::vector<Point> kept;
  for (Point& p : space.lattice) {
    if (in_all(detail::split_lifted(p))) kept.push_back(std::move(p));
  }
  space.lattice = std::move(kept);

  return detail::run_lifted_search(space, e, alpha, budget, tol, env, in_all,
                                   margin_all);
}

// Max deviation of E(E(x)) from E(x) over sampled points; the epigraph and
// level-set theorems require an idempotent map.
inline bool emap_idempotent_on_samples(const EMap& e, const RegionSpec& region,
                                       const EvalEnv& env, long long samples = 256,
                                       double tol = 1e-12) {
  const SampleSpace space = make_region_space(region, 16);
  for (const Point& x : candidate_points(space, samples, 3)) {
    const Point u = apply_emap(e, x, env);
    const Point uu = apply_emap(e, u, env);
    for (size_t i = 0; i < u.size(); ++i) {
      if (std::fabs(uu[i] - u[i]) > tol) return false;
    }
  }
  return true;
}

// Quantiles of g over sampled E-image points; where the level sets actually
// change shape.
inline std::vector<double> default_level_grid(const FnPtr& g, const EMap& e,
                                              const RegionSpec& region,
                                              const EvalEnv& env, int count = 16) {
  const SampleSpace space = make_region_space(region, 16);
  std::vector<Point> probes = space.lattice;
  if (probes.empty()) probes = candidate_points(space, 512, 5);
  std::vector<double> vals;
  vals.reserve(probes.size());
  for (const Point& x : probes) {
    vals.push_back(eval_fn(g, apply_emap(e, x, env), env));
  }
  std::sort(vals.begin(), vals.end());
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const size_t idx = vals.size() <= 1
                           ? 0
                           : (static_cast<size_t>(i) * (vals.size() - 1)) /
                                 static_cast<size_t>(count - 1);
    if (grid.empty() || vals[idx] != grid.back()) grid.push_back(vals[idx]);
  }
  return grid;
}

// Convexity of the restricted lower level sets L_r(g~) over E(region),
// sampled per level; the first witness across the r-grid (in grid order)
// wins. With E idempotent on samples, blends are also screened by the
// fixed-point membership test for E(region), surfacing precondition
// failures as input errors.
inline Certificate check_level_sets_convex(const FnPtr& g, const EMap& e, double alpha,
                                           const std::vector<double>& r_grid,
                                           const RegionSpec& region,
                                           const Budget& budget, double tol = 1e-9,
                                           bool even_power = false) {
  AlphaCtx check(alpha);
  (void)check;
  budget.validate();
  if (!(tol > 0.0)) throw input_error("tolerance must be > 0");
  if (r_grid.empty()) throw input_error("level-set check requires a nonempty r-grid");
  const EvalEnv env{alpha, even_power};

  const SampleSpace space = make_region_space(region, budget.grid);
  const std::vector<PairCand> raw = candidate_pairs(space, budget.samples, budget.seed);
  std::vector<PairCand> image_pairs;
  image_pairs.reserve(raw.size());
  for (const PairCand& pc : raw) {
    image_pairs.push_back(
        {apply_emap(e, pc.y1, env), apply_emap(e, pc.y2, env)});
  }

  const bool idempotent = emap_idempotent_on_samples(e, region, env);
  if (idempotent) {
    // E(region) = fixed points of E inside region; spot-check its convexity.
    const size_t probe = std::min<size_t>(image_pairs.size(), 64);
    for (size_t i = 0; i < probe; ++i) {
      const Point mid = detail::blend(image_pairs[i].y1, image_pairs[i].y2, 0.5, 0.5);
      const Point em = apply_emap(e, mid, env);
      double dev = 0.0;
      for (size_t c = 0; c < mid.size(); ++c) dev = std::max(dev, std::fabs(em[c] - mid[c]));
      if (dev > 1e-9 || !region_contains(region, mid)) {
        throw input_error("E(region) is not convex on samples");
      }
    }
  }

  const std::vector<double> etas = eta_grid(budget.grid, true);
  Certificate last;
  for (double r : r_grid) {
    Certificate cert = run_pair_search(
        image_pairs, etas,
        [&](const Point& u1, const Point& u2, double eta) -> std::optional<Witness> {
          if (eval_fn(g, u1, env) > r || eval_fn(g, u2, env) > r) return std::nullopt;
          const Point z = detail::blend(u1, u2, eta, 1.0 - eta);
          const double v = eval_fn(g, z, env);
          if (v - r > tol) {
            return Witness{u1, u2, eta, v, r, v - r};
          }
          return std::nullopt;
        },
        budget);
    if (cert.status == CertStatus::Counterexample) return cert;
    last = cert;
  }
  return last;
}

}  // namespace fractal_ineq
