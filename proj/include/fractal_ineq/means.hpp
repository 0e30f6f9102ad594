#pragma once

#include <cmath>
#include <optional>

#include "fractal_ineq/hh_bounds.hpp"

namespace fractal_ineq {

enum class MeanKind { AAlpha, LnAlpha, AClassical, LClassical, LnClassical };

namespace detail {

// 1/Gamma(z) on the whole real line (entire function; zero at the poles).
// The mean propositions divide by Gamma(1+(s-2)alpha), which crosses into
// negative territory for alpha near 1.
inline double reciprocal_gamma(double z) {
  if (z >= 0.5) return 1.0 / lanczos_gamma(z);
  return std::sin(M_PI * z) * lanczos_gamma(1.0 - z) / M_PI;
}

// |Gamma(1+s*a)/Gamma(1+(s-2)*a)|; at alpha = 1 this is |s(s-1)|.
inline double mean_ratio_abs(double s, const AlphaCtx& ctx) {
  const double a = ctx.alpha;
  return std::fabs(gamma(1.0 + s * a) * reciprocal_gamma(1.0 + (s - 2.0) * a));
}

inline void require_mean_args(double y1, double y2) {
  if (!(y1 > 0.0) || !(y2 > 0.0)) {
    std::ostringstream os;
    os << "means require y1, y2 > 0, got y1 = " << y1 << ", y2 = " << y2;
    throw input_error(os.str());
  }
}

}  // namespace detail

// The section-5 means. The alpha-order Ln is exactly as printed, without the
// (n+1)(y2-y1) divisor its own classical counterpart carries; both are
// exposed, under distinct tags.
inline double mean(MeanKind kind, double y1, double y2, std::optional<double> n,
                   const AlphaCtx& ctx) {
  detail::require_mean_args(y1, y2);
  const double a = ctx.alpha;
  switch (kind) {
    case MeanKind::AAlpha:
      return (std::pow(y1, a) + std::pow(y2, a)) / std::pow(2.0, a);
    case MeanKind::AClassical:
      return 0.5 * (y1 + y2);
    case MeanKind::LClassical: {
      if (y1 == y2) throw input_error("log mean requires y1 != y2");
      return (y1 - y2) / (std::log(y1) - std::log(y2));
    }
    case MeanKind::LnAlpha:
    case MeanKind::LnClassical: {
      if (!n) throw input_error("Ln means require the order n");
      if (y1 == y2) throw input_error("Ln means require y1 != y2");
      if (*n == 0.0 || *n == -1.0) throw input_error("Ln means require n not in {-1,0}");
      double radicand;
      if (kind == MeanKind::LnAlpha) {
        radicand = gamma(1.0 + *n * a) *
                   detail::reciprocal_gamma(1.0 + (*n + 1.0) * a) *
                   (std::pow(y2, (*n + 1.0) * a) - std::pow(y1, (*n + 1.0) * a));
      } else {
        radicand = (std::pow(y2, *n + 1.0) - std::pow(y1, *n + 1.0)) /
                   ((*n + 1.0) * (y2 - y1));
      }
      const double value = std::pow(radicand, 1.0 / *n);
      if (!std::isfinite(value)) {
        std::ostringstream os;
        os << "Ln mean undefined for n = " << *n << " on (" << y1 << ", " << y2
           << "): radicand " << radicand;
        throw numeric_error(os.str());
      }
      return value;
    }
  }
  throw input_error("unknown mean kind");
}

// Proposition 1: the some2 deviation of phi(x) = x^(s*alpha) against the
// Gamma closed form. The left side uses the midpoint form ((y1+y2)/2)^(s*a),
// which for alpha < 1 differs from (A-alpha)^s; the proposition's proof runs
// through the midpoint theorem, so that is the form computed.
inline IneqReport prop_mean_bound_1(double y1, double y2, double s,
                                    const AlphaCtx& ctx) {
  detail::require_mean_args(y1, y2);
  if (!(y1 < y2)) throw input_error("proposition requires y1 < y2");
  if (!(s > 0.0) || !(s < 1.0)) throw input_error("proposition requires s in (0,1)");
  const double a = ctx.alpha;
  const Interval iv(y1, y2);
  const FractalPoly phi = FractalPoly::monomial(a, 1.0, s);

  const double brace =
      std::pow(2.0, a) * gamma(1.0 + 3.0 * a) * std::pow(gamma(1.0 + a), 2.0) /
          (gamma(1.0 + 4.0 * a) * gamma(1.0 + 2.0 * a)) +
      gamma_ratio(1.0, 2.0, ctx) - std::pow(2.0, a) * gamma_ratio(2.0, 3.0, ctx) +
      gamma_ratio(3.0, 4.0, ctx);
  const double rhs = detail::weight_16(iv, a) * detail::mean_ratio_abs(s, ctx) *
                     brace *
                     (std::pow(y1, (s - 2.0) * a) + std::pow(y2, (s - 2.0) * a));

  IneqReport rep;
  rep.label = "prop1";
  rep.alpha = a;
  rep.s = s;
  rep.lo = y1;
  rep.hi = y2;
  rep.lhs = detail::midpoint_deviation(phi, iv);
  rep.rhs = rhs;
  rep.add_link("lhs<=rhs", rep.lhs, rhs);
  return rep;
}

// Proposition 2: the Holder variant with the two p2-bracket terms at the
// midpoint and the endpoints.
inline IneqReport prop_mean_bound_2(double y1, double y2, double s,
                                    const HolderPair& hp, const AlphaCtx& ctx) {
  detail::require_mean_args(y1, y2);
  if (!(y1 < y2)) throw input_error("proposition requires y1 < y2");
  if (!(s > 0.0) || !(s < 1.0)) throw input_error("proposition requires s in (0,1)");
  const double a = ctx.alpha;
  const Interval iv(y1, y2);
  const FractalPoly phi = FractalPoly::monomial(a, 1.0, s);

  const double mid = iv.mid();
  const double e = (s - 2.0) * hp.p2 * a;
  const double bracket1 =
      std::pow(std::pow(mid, e) + std::pow(y1, e), 1.0 / hp.p2);
  const double bracket2 =
      std::pow(std::pow(mid, e) + std::pow(y2, e), 1.0 / hp.p2);
  const double rhs = detail::weight_16(iv, a) *
                     std::pow(gamma_ratio(1.0, 2.0, ctx), 1.0 / hp.p2) *
                     detail::mean_ratio_abs(s, ctx) *
                     std::pow(gamma_ratio(2.0 * hp.p1, 2.0 * hp.p1 + 1.0, ctx),
                              1.0 / hp.p1) *
                     (bracket1 + bracket2);

  IneqReport rep;
  rep.label = "prop2";
  rep.alpha = a;
  rep.s = s;
  rep.p1 = hp.p1;
  rep.p2 = hp.p2;
  rep.lo = y1;
  rep.hi = y2;
  rep.lhs = detail::midpoint_deviation(phi, iv);
  rep.rhs = rhs;
  rep.add_link("lhs<=rhs", rep.lhs, rhs);
  return rep;
}

// Claimed Cantor-set wave solution x^a/Gamma(1+a) + t^(2a)/Gamma(1+2a).
inline double wave_solution_eval(double x, double t, const AlphaCtx& ctx) {
  if (!(x >= 0.0) || !(t >= 0.0)) {
    std::ostringstream os;
    os << "wave solution requires x, t >= 0, got x = " << x << ", t = " << t;
    throw eval_domain_error(os.str());
  }
  const double a = ctx.alpha;
  return std::pow(x, a) / gamma(1.0 + a) +
         std::pow(t, 2.0 * a) / gamma(1.0 + 2.0 * a);
}

// Both sides of the wave equation at the claimed solution, each via two
// power-rule derivatives. Reported, never asserted: they disagree (1 vs 0)
// for every alpha, which is the honest output.
inline std::pair<double, double> wave_residual(double x, double t,
                                               const AlphaCtx& ctx) {
  if (!(x > 0.0)) throw input_error("wave residual requires x > 0");
  if (!(t >= 0.0)) throw input_error("wave residual requires t >= 0");
  const double a = ctx.alpha;
  const FractalPoly t_part =
      FractalPoly::monomial(a, 1.0 / gamma(1.0 + 2.0 * a), 2.0);
  const FractalPoly x_part = FractalPoly::monomial(a, 1.0 / gamma(1.0 + a), 1.0);
  const double lhs = fp_eval(d_alpha(d_alpha(t_part)), t);
  const double rhs = std::pow(x, 2.0 * a) / gamma(1.0 + 2.0 * a) *
                     fp_eval(d_alpha(d_alpha(x_part)), x);
  return {lhs, rhs};
}

}  // namespace fractal_ineq
