#pragma once

#include <cmath>
#include <optional>

#include "fractal_ineq/evaluable.hpp"
#include "fractal_ineq/fractal_poly.hpp"
#include "fractal_ineq/ineq_report.hpp"
#include "fractal_ineq/quadrature.hpp"

namespace fractal_ineq {

namespace detail {

// Structural constant detection; the reverse-premise closed forms only exist
// for the k = 0 end of the monomial family.
inline std::optional<double> constant_value(const EvaluableFn& fn) {
  return std::visit(
      [](const auto& n) -> std::optional<double> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PolyNode>) {
          double acc = 0.0;
          for (const auto& t : n.poly.terms) {
            if (t.k != 0.0) return std::nullopt;
            acc += t.coeff;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, MonoNode>) {
          for (double k : n.exps) {
            if (k != 0.0) return std::nullopt;
          }
          return n.coeff;
        } else if constexpr (std::is_same_v<T, CPolyNode>) {
          if (n.coeffs.size() > 1) {
            for (size_t i = 1; i < n.coeffs.size(); ++i) {
              if (n.coeffs[i] != 0.0) return std::nullopt;
            }
          }
          return n.coeffs.empty() ? 0.0 : n.coeffs[0];
        } else if constexpr (std::is_same_v<T, AffinePreNode>) {
          return constant_value(*n.fn);
        } else if constexpr (std::is_same_v<T, WSumNode>) {
          double acc = 0.0;
          for (const auto& s : n.summands) {
            auto c = constant_value(*s.fn);
            if (!c) return std::nullopt;
            acc += s.w * *c;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, SupFamilyNode>) {
          double acc = -std::numeric_limits<double>::infinity();
          for (const auto& f : n.fns) {
            auto c = constant_value(*f);
            if (!c) return std::nullopt;
            acc = std::max(acc, *c);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          return constant_value(*n.outer);
        } else {
          return std::nullopt;
        }
      },
      fn.node);
}

// The constant value of the second alpha-derivative, or an unsupported-family
// error: everything past the midpoint identity requires it.
inline double constant_second_derivative(const FractalPoly& f) {
  const FractalPoly d2 = d_alpha(d_alpha(f));
  double c = 0.0;
  for (const auto& t : d2.terms) {
    if (t.k != 0.0) {
      std::ostringstream os;
      os << "unsupported family: second alpha-derivative is not constant "
            "(exponent k = "
         << t.k << " remains)";
      throw unsupported_family_error(os.str());
    }
    c += t.coeff;
  }
  return c;
}

inline double abs_d2_at(const FractalPoly& d2, double x) {
  return std::fabs(fp_eval(d2, x));
}

// |Gamma(1+2a)/2^a f(mid) - Gamma(1+2a)Gamma(1+a)^2 / (2^a (b-a)^a) int f|.
inline double midpoint_deviation(const FractalPoly& f, const Interval& iv) {
  const AlphaCtx ctx = f.ctx();
  const double a = ctx.alpha;
  const double g2 = gamma(1.0 + 2.0 * a);
  const double g1 = gamma(1.0 + a);
  const double mid_term = g2 / std::pow(2.0, a) * fp_eval(f, iv.mid());
  const double int_term = g2 * g1 * g1 /
                          (std::pow(2.0, a) * std::pow(iv.width(), a)) *
                          lf_integral(f, iv);
  return std::fabs(mid_term - int_term);
}

inline double weight_16(const Interval& iv, double a) {
  return std::pow(iv.width(), 2.0 * a) / std::pow(16.0, a);
}

}  // namespace detail

// Chain eq8: f(mid) <= Gamma(1+a)/(b-a)^a * int <= (f(a)+f(b))/2^a for
// generalized convex f.
inline IneqReport hh_generalized(const FractalPoly& f, const Interval& iv) {
  const AlphaCtx ctx = f.ctx();
  const double a = ctx.alpha;
  IneqReport rep;
  rep.label = "eq8";
  rep.alpha = a;
  rep.lo = iv.lo;
  rep.hi = iv.hi;
  rep.lhs = fp_eval(f, iv.mid());
  rep.middle = gamma(1.0 + a) / std::pow(iv.width(), a) * lf_integral(f, iv);
  rep.rhs = (fp_eval(f, iv.lo) + fp_eval(f, iv.hi)) / std::pow(2.0, a);
  rep.add_link("lhs<=middle", rep.lhs, *rep.middle);
  rep.add_link("middle<=rhs", *rep.middle, rep.rhs);
  return rep;
}

// Chain eq9: the alpha = 1 chain for arbitrary evaluable integrands, middle
// computed by classical quadrature.
inline IneqReport hh_classical(const FnPtr& f, const Interval& iv) {
  const EvalEnv env{1.0, false};
  IneqReport rep;
  rep.label = "eq9";
  rep.alpha = 1.0;
  rep.lo = iv.lo;
  rep.hi = iv.hi;
  const auto f1 = [&](double x) { return eval_fn(f, Point{x}, env); };
  rep.lhs = f1(iv.mid());
  rep.middle = adaptive_simpson([&](double x) { return f1(x); }, iv.lo, iv.hi) /
               iv.width();
  rep.rhs = 0.5 * (f1(iv.lo) + f1(iv.hi));
  rep.add_link("lhs<=middle", rep.lhs, *rep.middle);
  rep.add_link("middle<=rhs", *rep.middle, rep.rhs);
  return rep;
}

// Chain eq10: classical s-convex chain
//   2^(s-1) f(mid) <= (1/(b-a)) int <= (f(a)+f(b))/(s+1).
inline IneqReport hh_s_classical(const FnPtr& f, const Interval& iv, double s) {
  if (!(s > 0.0) || !(s <= 1.0)) throw input_error("hh_s_classical requires s in (0,1]");
  const EvalEnv env{1.0, false};
  IneqReport rep;
  rep.label = "eq10";
  rep.alpha = 1.0;
  rep.s = s;
  rep.lo = iv.lo;
  rep.hi = iv.hi;
  const auto f1 = [&](double x) { return eval_fn(f, Point{x}, env); };
  rep.lhs = std::pow(2.0, s - 1.0) * f1(iv.mid());
  rep.middle = adaptive_simpson([&](double x) { return f1(x); }, iv.lo, iv.hi) /
               iv.width();
  rep.rhs = (f1(iv.lo) + f1(iv.hi)) / (s + 1.0);
  rep.add_link("lhs<=middle", rep.lhs, *rep.middle);
  rep.add_link("middle<=rhs", *rep.middle, rep.rhs);
  return rep;
}

// Chain eq11: generalized s-convex chain
//   2^(a(s-1)) f(mid) <= Gamma(1+a)/(b-a)^a int
//                     <= Gamma(1+sa)Gamma(1+a)/Gamma(1+(s+1)a) (f(a)+f(b)).
inline IneqReport hh_s_generalized(const FractalPoly& f, const Interval& iv, double s) {
  const AlphaCtx ctx = f.ctx();
  const double a = ctx.alpha;
  IneqReport rep;
  rep.label = "eq11";
  rep.alpha = a;
  rep.s = s;
  rep.lo = iv.lo;
  rep.hi = iv.hi;
  rep.lhs = std::pow(2.0, a * (s - 1.0)) * fp_eval(f, iv.mid());
  rep.middle = gamma(1.0 + a) / std::pow(iv.width(), a) * lf_integral(f, iv);
  rep.rhs = hh_constant(s, ctx) * (fp_eval(f, iv.lo) + fp_eval(f, iv.hi));
  rep.add_link("lhs<=middle", rep.lhs, *rep.middle);
  rep.add_link("middle<=rhs", *rep.middle, rep.rhs);
  return rep;
}

// Midpoint identity of the lemma, both sides evaluated independently under
// the power-rule engine:
//   lhs = Gamma(1+2a)Gamma(1+a)^2/(2^a (b-a)^a) int - Gamma(1+2a)/2^a f(mid)
//   rhs = (b-a)^(2a)/16^a [ _0I_1 t^(2a) C + _0I_1 (t-1)^(2a) C ]
// with C the (constant) second alpha-derivative; (t-1)^(2a) integrates by the
// even-power convention plus the reflection rule.
inline std::pair<double, double> lemma_midpoint_identity(const FractalPoly& f,
                                                         const Interval& iv) {
  const AlphaCtx ctx = f.ctx();
  const double a = ctx.alpha;
  const double c = detail::constant_second_derivative(f);
  const double g2 = gamma(1.0 + 2.0 * a);
  const double g1 = gamma(1.0 + a);
  const double lhs = g2 * g1 * g1 / (std::pow(2.0, a) * std::pow(iv.width(), a)) *
                         lf_integral(f, iv) -
                     g2 / std::pow(2.0, a) * fp_eval(f, iv.mid());
  const FractalPoly t2a = FractalPoly::monomial(a, 1.0, 2.0);
  const double i_gamma = lf_integral(t2a, Interval(0.0, 1.0));
  const double i_reflected = lf_integral_unit_reflected(t2a);
  const double rhs = detail::weight_16(iv, a) * c * (i_gamma + i_reflected);
  return {lhs, rhs};
}

// Theorem some2: |deviation| <= some3 expression <= some4 expression, for
// |f^(2a)| generalized s-convex.
inline IneqReport bound_some2(const FractalPoly& f, const Interval& iv, double s) {
  if (!(s > 0.0) || !(s <= 1.0)) throw input_error("bound_some2 requires s in (0,1]");
  const AlphaCtx ctx = f.ctx();
  const double a = ctx.alpha;
  const FractalPoly d2 = d_alpha(d_alpha(f));
  const double A = detail::abs_d2_at(d2, iv.mid());
  const double b1 = detail::abs_d2_at(d2, iv.lo);
  const double b2 = detail::abs_d2_at(d2, iv.hi);
  const double w = detail::weight_16(iv, a);
  const double bracket = gamma_ratio(s, s + 1.0, ctx) -
                         std::pow(2.0, a) * gamma_ratio(s + 1.0, s + 2.0, ctx) +
                         gamma_ratio(s + 2.0, s + 3.0, ctx);
  const double some3 =
      w * (std::pow(2.0, a) * gamma_ratio(s + 2.0, s + 3.0, ctx) * A +
           bracket * (b1 + b2));
  const double some4 =
      w *
      (std::pow(2.0, a * (2.0 - s)) * gamma_ratio(s + 2.0, s + 3.0, ctx) *
           hh_constant(s, ctx) +
       bracket) *
      (b1 + b2);

  IneqReport rep;
  rep.label = "some3";
  rep.alpha = a;
  rep.s = s;
  rep.lo = iv.lo;
  rep.hi = iv.hi;
  rep.lhs = detail::midpoint_deviation(f, iv);
  rep.middle = some3;
  rep.rhs = some4;
  rep.add_link("lhs<=some3", rep.lhs, some3);
  rep.add_link("some3<=some4", some3, some4);
  if (s == 1.0) rep.notes.push_back("s=1: reduces to the some5 constants");
  return rep;
}

// Theorem some6: Holder split, |f^(2a)|^p2 generalized s-convex.
inline IneqReport bound_some6(const FractalPoly& f, const Interval& iv, double s,
                              const HolderPair& hp) {
  if (!(s > 0.0) || !(s <= 1.0)) throw input_error("bound_some6 requires s in (0,1]");
  const AlphaCtx ctx = f.ctx();
  const double a = ctx.alpha;
  const FractalPoly d2 = d_alpha(d_alpha(f));
  const double A = detail::abs_d2_at(d2, iv.mid());
  const double b1 = detail::abs_d2_at(d2, iv.lo);
  const double b2 = detail::abs_d2_at(d2, iv.hi);
  const double some7 =
      detail::weight_16(iv, a) *
      std::pow(gamma_ratio(s, s + 1.0, ctx), 1.0 / hp.p2) *
      std::pow(gamma_ratio(2.0 * hp.p1, 2.0 * hp.p1 + 1.0, ctx), 1.0 / hp.p1) *
      (std::pow(std::pow(A, hp.p2) + std::pow(b1, hp.p2), 1.0 / hp.p2) +
       std::pow(std::pow(A, hp.p2) + std::pow(b2, hp.p2), 1.0 / hp.p2));

  IneqReport rep;
  rep.label = "some7";
  rep.alpha = a;
  rep.s = s;
  rep.p1 = hp.p1;
  rep.p2 = hp.p2;
  rep.lo = iv.lo;
  rep.hi = iv.hi;
  rep.lhs = detail::midpoint_deviation(f, iv);
  rep.rhs = some7;
  rep.add_link("lhs<=some7", rep.lhs, some7);
  if (s == 1.0) rep.notes.push_back("s=1: reduces to the some8 constants");
  return rep;
}

// Corollary after some6, in the proof's bracket form
// 2^(a(1-s)/p2) [Gamma(1+sa)]^(1/p2) [Gamma(1+a)]^(1/p2).
inline IneqReport bound_corollary(const FractalPoly& f, const Interval& iv, double s,
                                  const HolderPair& hp) {
  if (!(s > 0.0) || !(s <= 1.0)) {
    throw input_error("bound_corollary requires s in (0,1]");
  }
  const AlphaCtx ctx = f.ctx();
  const double a = ctx.alpha;
  const FractalPoly d2 = d_alpha(d_alpha(f));
  const double b1 = detail::abs_d2_at(d2, iv.lo);
  const double b2 = detail::abs_d2_at(d2, iv.hi);
  const double gs = gamma(1.0 + s * a);
  const double gs1 = gamma(1.0 + (s + 1.0) * a);
  const double g1 = gamma(1.0 + a);
  const double two = std::pow(2.0, a * (1.0 - s));
  const double rhs =
      detail::weight_16(iv, a) * std::pow(gs, 1.0 / hp.p2) /
      std::pow(gs1, 2.0 / hp.p2) *
      std::pow(gamma_ratio(2.0 * hp.p1, 2.0 * hp.p1 + 1.0, ctx), 1.0 / hp.p1) *
      (std::pow(two * gs * g1 + gs1, 1.0 / hp.p2) +
       std::pow(two, 1.0 / hp.p2) * std::pow(gs, 1.0 / hp.p2) *
           std::pow(g1, 1.0 / hp.p2)) *
      (b1 + b2);

  IneqReport rep;
  rep.label = "corollary";
  rep.alpha = a;
  rep.s = s;
  rep.p1 = hp.p1;
  rep.p2 = hp.p2;
  rep.lo = iv.lo;
  rep.hi = iv.hi;
  rep.lhs = detail::midpoint_deviation(f, iv);
  rep.rhs = rhs;
  rep.add_link("lhs<=corollary", rep.lhs, rhs);
  return rep;
}

// Theorem some9: quarter-point bound for |f^(2a)|^p2 generalized s-concave.
inline IneqReport bound_some9(const FractalPoly& f, const Interval& iv, double s,
                              const HolderPair& hp) {
  if (!(s > 0.0) || !(s <= 1.0)) throw input_error("bound_some9 requires s in (0,1]");
  const AlphaCtx ctx = f.ctx();
  const double a = ctx.alpha;
  const FractalPoly d2 = d_alpha(d_alpha(f));
  const double q1 = detail::abs_d2_at(d2, (3.0 * iv.lo + iv.hi) / 4.0);
  const double q2 = detail::abs_d2_at(d2, (iv.lo + 3.0 * iv.hi) / 4.0);
  const double rhs =
      std::pow(2.0, a * (s - 1.0) / hp.p2) * std::pow(iv.width(), 2.0 * a) /
      (std::pow(16.0, a) * std::pow(gamma(1.0 + a), 1.0 / hp.p2)) *
      std::pow(gamma_ratio(2.0 * hp.p1, 2.0 * hp.p1 + 1.0, ctx), 1.0 / hp.p1) *
      (q1 + q2);

  IneqReport rep;
  rep.label = "some9";
  rep.alpha = a;
  rep.s = s;
  rep.p1 = hp.p1;
  rep.p2 = hp.p2;
  rep.lo = iv.lo;
  rep.hi = iv.hi;
  rep.lhs = detail::midpoint_deviation(f, iv);
  rep.rhs = rhs;
  rep.add_link("lhs<=some9", rep.lhs, rhs);
  return rep;
}

// Premise legs of the quarter-point theorem:
//   _0I_1 |g(affine_leg(t))|^p2 <= 2^(a(s-1))/Gamma(1+a) |g(quarter)|^p2
// with leg 1 running y1 -> mid (quarter (3y1+y2)/4) and leg 2 mid -> y2.
// Closed forms exist at alpha = 1 (classical quadrature) and for constant g;
// the shifted affine argument of leg 2 has no power-algebra reduction
// otherwise, which the report states instead of guessing.
inline IneqReport reverse_hh_premise(const FnPtr& g, const Interval& iv, double s,
                                     double p2, const AlphaCtx& ctx) {
  if (!(s > 0.0) || !(s <= 1.0)) {
    throw input_error("reverse_hh_premise requires s in (0,1]");
  }
  if (!(p2 > 1.0)) throw input_error("reverse_hh_premise requires p2 > 1");
  const double a = ctx.alpha;

  IneqReport rep;
  rep.label = "some9";
  rep.alpha = a;
  rep.s = s;
  rep.p2 = p2;
  rep.lo = iv.lo;
  rep.hi = iv.hi;
  rep.notes.push_back("premise-check");

  const double factor = std::pow(2.0, a * (s - 1.0)) / gamma(1.0 + a);
  const EvalEnv env{a, false};
  const auto gv = [&](double x) { return eval_fn(g, Point{x}, env); };
  const double quarter1 = (3.0 * iv.lo + iv.hi) / 4.0;
  const double quarter2 = (iv.lo + 3.0 * iv.hi) / 4.0;
  const double rhs1 = factor * std::pow(std::fabs(gv(quarter1)), p2);
  const double rhs2 = factor * std::pow(std::fabs(gv(quarter2)), p2);

  double lhs1;
  double lhs2;
  if (a == 1.0) {
    const double mid = iv.mid();
    lhs1 = adaptive_simpson(
        [&](double t) {
          return std::pow(std::fabs(gv(t * mid + (1.0 - t) * iv.lo)), p2);
        },
        0.0, 1.0);
    lhs2 = adaptive_simpson(
        [&](double t) {
          return std::pow(std::fabs(gv(t * iv.hi + (1.0 - t) * mid)), p2);
        },
        0.0, 1.0);
  } else if (auto c = detail::constant_value(*g)) {
    const double cp = std::pow(std::fabs(*c), p2);
    lhs1 = cp / gamma(1.0 + a);
    lhs2 = lhs1;
  } else {
    rep.notes.push_back("unsupported-family");
    rep.lhs = std::numeric_limits<double>::quiet_NaN();
    rep.rhs = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }

  rep.lhs = lhs1 + lhs2;
  rep.rhs = rhs1 + rhs2;
  rep.add_link("some10", lhs1, rhs1);
  rep.add_link("some11", lhs2, rhs2);
  return rep;
}

}  // namespace fractal_ineq
