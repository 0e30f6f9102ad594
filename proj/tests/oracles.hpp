// Test-side oracles, deliberately independent of the library internals:
// the standard-library Gamma, a plain recursive Simpson rule, and a
// brute-force classical convexity scan. Golden values in the test files were
// produced with these and frozen before the library paths were compared
// against them.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace oracles {

inline double gamma(double x) { return std::tgamma(x); }

// Power-rule antiderivative coefficient: the exact value the library's
// integral must produce for a single monomial term on [0, x].
inline double power_integral_coeff(double k, double a) {
  return gamma(1.0 + k * a) / gamma(1.0 + (k + 1.0) * a);
}

inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 1e-12) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, 24);
}

// Classical convexity scan on a uniform grid: returns true when
// f(eta x + (1-eta) y) <= eta f(x) + (1-eta) f(y) + tol everywhere sampled.
inline bool convex_on_grid(const std::function<double(double)>& f, double lo, double hi,
                           int n = 64, double tol = 1e-9) {
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    for (int j = i + 1; j <= n; ++j) {
      const double y = lo + (hi - lo) * j / n;
      for (int e = 0; e <= 16; ++e) {
        const double eta = e / 16.0;
        const double blend = f(eta * x + (1.0 - eta) * y);
        if (blend > eta * f(x) + (1.0 - eta) * f(y) + tol) return false;
      }
    }
  }
  return true;
}

// SplitMix64, the test suite's only randomness source.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return (next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
};

}  // namespace oracles
