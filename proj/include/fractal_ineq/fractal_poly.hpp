#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fractal_ineq/alpha.hpp"
#include "fractal_ineq/errors.hpp"

namespace fractal_ineq {

// Closed sub-interval of [0, inf). The calculus operations below require
// nonnegative endpoints because x^(k*alpha) is only defined there.
struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo >= 0.0) || !(lo < hi) || !std::isfinite(hi)) {
      std::ostringstream os;
      os << "interval requires 0 <= lo < hi, got [" << lo_ << ", " << hi_ << "]";
      throw input_error(os.str());
    }
  }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

// Finite sum  sum_i c_i * x^(k_i * alpha)  with real exponents k_i >= 0.
// Canonical form: terms sorted by k ascending, k values distinct, zero
// coefficients dropped.
struct FractalPoly {
  struct Term {
    double coeff;
    double k;
  };

  double alpha;
  std::vector<Term> terms;

  FractalPoly(double alpha_, std::vector<Term> raw) : alpha(alpha_) {
    AlphaCtx check(alpha_);  // validates alpha
    (void)check;
    for (const Term& t : raw) {
      if (!(t.k >= 0.0) || !std::isfinite(t.k) || !std::isfinite(t.coeff)) {
        std::ostringstream os;
        os << "fpoly term needs finite coeff and k >= 0, got coeff = " << t.coeff
           << ", k = " << t.k;
        throw input_error(os.str());
      }
    }
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return a.k < b.k; });
    for (const Term& t : raw) {
      if (!terms.empty() && terms.back().k == t.k) {
        terms.back().coeff += t.coeff;
      } else {
        terms.push_back(t);
      }
    }
    terms.erase(std::remove_if(terms.begin(), terms.end(),
                               [](const Term& t) { return t.coeff == 0.0; }),
                terms.end());
  }

  static FractalPoly monomial(double alpha_, double coeff, double k) {
    return FractalPoly(alpha_, {{coeff, k}});
  }

  AlphaCtx ctx() const { return AlphaCtx(alpha); }
};

// Pointwise evaluation at x >= 0.
inline double fp_eval(const FractalPoly& p, double x) {
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << "fpoly evaluation requires x >= 0, got " << x;
    throw eval_domain_error(os.str());
  }
  double acc = 0.0;
  for (const auto& t : p.terms) {
    acc += t.coeff * ((x == 0.0 && t.k == 0.0) ? 1.0 : std::pow(x, t.k * p.alpha));
  }
  return acc;
}

inline double eval(const FractalPoly& p, double x) { return fp_eval(p, x); }

// Local fractional derivative:
//   D^alpha x^(k*alpha) = Gamma(1+k*alpha)/Gamma(1+(k-1)*alpha) * x^((k-1)*alpha).
// Constants vanish; exponents 0 < k < 1 would leave the algebra and are
// rejected.
inline FractalPoly d_alpha(const FractalPoly& p) {
  AlphaCtx ctx = p.ctx();
  std::vector<FractalPoly::Term> out;
  for (const auto& t : p.terms) {
    if (t.k == 0.0) continue;
    if (t.k < 1.0) {
      std::ostringstream os;
      os << "d_alpha: unsupported exponent k = " << t.k
         << " (needs k = 0 or k >= 1)";
      throw unsupported_family_error(os.str());
    }
    out.push_back({t.coeff * gamma_ratio(t.k, t.k - 1.0, ctx), t.k - 1.0});
  }
  return FractalPoly(p.alpha, std::move(out));
}

// Antiderivative under the power rule, anchored at 0:
//   x^(k*alpha) -> Gamma(1+k*alpha)/Gamma(1+(k+1)*alpha) * x^((k+1)*alpha).
inline FractalPoly lf_antiderivative(const FractalPoly& p) {
  AlphaCtx ctx = p.ctx();
  std::vector<FractalPoly::Term> out;
  out.reserve(p.terms.size());
  for (const auto& t : p.terms) {
    out.push_back({t.coeff * gamma_ratio(t.k, t.k + 1.0, ctx), t.k + 1.0});
  }
  return FractalPoly(p.alpha, std::move(out));
}

// Local fractional integral _aI_b^(alpha) via Newton-Leibniz on the 0-anchored
// antiderivative.
inline double lf_integral(const FractalPoly& p, const Interval& iv) {
  FractalPoly F = lf_antiderivative(p);
  return fp_eval(F, iv.hi) - fp_eval(F, iv.lo);
}

// Engine axiom for reflected unit-interval integrands:
//   _0I_1 p(1 - t) := _0I_1 p(t).
// (1-t)^(k*alpha) has no expansion in the power algebra; the reflection rule
// is how every such integral in the source inequalities is evaluated.
inline double lf_integral_unit_reflected(const FractalPoly& p) {
  return lf_integral(p, Interval(0.0, 1.0));
}

}  // namespace fractal_ineq
