#pragma once

#include <cmath>
#include <limits>
#include <sstream>

#include "fractal_ineq/errors.hpp"

namespace fractal_ineq {

// Fractal order context. The whole library models R^alpha through the
// alpha-power map, so alpha rides along with every computation.
struct AlphaCtx {
  double alpha;

  explicit AlphaCtx(double a) : alpha(a) {
    if (!(a > 0.0) || !(a <= 1.0) || !std::isfinite(a)) {
      std::ostringstream os;
      os << "alpha must lie in (0,1], got " << a;
      throw input_error(os.str());
    }
  }
};

// An element a^alpha of R^alpha, carried as its real magnitude plus the order
// it was formed under. No arithmetic beyond the power map is defined.
struct FractalScalar {
  double magnitude;
  double alpha;

  FractalScalar(double m, const AlphaCtx& ctx) : magnitude(m), alpha(ctx.alpha) {
    if (!std::isfinite(m)) {
      std::ostringstream os;
      os << "fractal scalar magnitude must be finite, got " << m;
      throw numeric_error(os.str());
    }
  }
};

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients. Relative error over the
// positive axis is a few ulp, comfortably inside the 1e-13 contract on
// [0.5, 10].
inline double lanczos_gamma(double x) {
  static const double kCoef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double acc = kCoef[0];
  for (int i = 1; i < 9; ++i) acc += kCoef[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

}  // namespace detail

// Gamma(x) for x > 0. x <= 0 is a domain error by contract.
inline double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "gamma requires x > 0, got " << x;
    throw input_error(os.str());
  }
  double value;
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    value = M_PI / (std::sin(M_PI * x) * detail::lanczos_gamma(1.0 - x));
  } else {
    value = detail::lanczos_gamma(x);
  }
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << "gamma overflow at x = " << x;
    throw numeric_error(os.str());
  }
  return value;
}

// Gamma(1 + k*alpha) / Gamma(1 + m*alpha), the ratio every power-rule
// coefficient is built from.
inline double gamma_ratio(double k, double m, const AlphaCtx& ctx) {
  if (k < 0.0 || m < 0.0) {
    std::ostringstream os;
    os << "gamma_ratio requires k, m >= 0, got k = " << k << ", m = " << m;
    throw input_error(os.str());
  }
  return gamma(1.0 + k * ctx.alpha) / gamma(1.0 + m * ctx.alpha);
}

// x^(p*alpha). Two conventions, selected per call site:
//   even_power = false: x must be >= 0.
//   even_power = true:  p must be a positive even integer and the value is
//                       (x^p)^alpha, defined for every real x.
inline double alpha_pow(double x, double p, const AlphaCtx& ctx, bool even_power = false) {
  if (!(p >= 0.0)) {
    std::ostringstream os;
    os << "alpha_pow requires p >= 0, got " << p;
    throw input_error(os.str());
  }
  if (even_power) {
    double ip;
    if (std::modf(p, &ip) != 0.0 || std::fmod(p, 2.0) != 0.0 || p <= 0.0) {
      std::ostringstream os;
      os << "even-power convention needs a positive even integer exponent, got " << p;
      throw input_error(os.str());
    }
    return std::pow(std::fabs(x), p * ctx.alpha);  // (x^p)^alpha with p even
  }
  if (x < 0.0) {
    std::ostringstream os;
    os << "alpha_pow: negative base " << x << " without the even-power convention";
    throw eval_domain_error(os.str());
  }
  if (x == 0.0 && p == 0.0) return 1.0;
  return std::pow(x, p * ctx.alpha);
}

// Gamma(1+s*alpha) Gamma(1+alpha) / Gamma(1+(s+1)*alpha): the constant on the
// right end of the generalized s-convex Hermite-Hadamard chain.
inline double hh_constant(double s, const AlphaCtx& ctx) {
  if (!(s > 0.0) || !(s <= 1.0)) {
    std::ostringstream os;
    os << "hh_constant requires s in (0,1], got " << s;
    throw input_error(os.str());
  }
  const double a = ctx.alpha;
  return gamma(1.0 + s * a) * gamma(1.0 + a) / gamma(1.0 + (s + 1.0) * a);
}

}  // namespace fractal_ineq
