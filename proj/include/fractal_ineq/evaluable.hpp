#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fractal_ineq/fractal_poly.hpp"

namespace fractal_ineq {

using Point = std::vector<double>;

struct EvalEnv {
  double alpha;
  bool even_power = false;
};

struct EvaluableFn;
using FnPtr = std::shared_ptr<const EvaluableFn>;

// Threshold predicate on one coordinate, e.g. x[1] < 1.0.
struct Guard {
  enum class Op { Lt, Le, Gt, Ge };
  int var;
  Op op;
  double c;

  bool matches(const Point& x) const {
    const double v = x.at(static_cast<size_t>(var));
    switch (op) {
      case Op::Lt: return v < c;
      case Op::Le: return v <= c;
      case Op::Gt: return v > c;
      case Op::Ge: return v >= c;
    }
    return false;
  }
};

struct PolyNode {
  FractalPoly poly;
};

// c * prod_i x_i^(k_i * alpha), the n-variable fractal monomial.
struct MonoNode {
  double coeff;
  std::vector<double> exps;
};

// Classical polynomial sum_i coeffs[i] * x^i, defined for every real x.
struct CPolyNode {
  std::vector<double> coeffs;
};

struct PiecewiseNode {
  struct Piece {
    Guard guard;
    FnPtr fn;
  };
  std::vector<Piece> pieces;
};

// f(scale * x + offset), applied componentwise to the argument.
struct AffinePreNode {
  FnPtr fn;
  double scale;
  double offset;
};

struct WSumNode {
  struct Summand {
    double w;
    FnPtr fn;
  };
  std::vector<Summand> summands;
};

struct SupFamilyNode {
  std::vector<FnPtr> fns;
};

struct ComposeNode {
  FnPtr outer;  // one-variable
  FnPtr inner;
};

struct EvaluableFn {
  std::variant<PolyNode, MonoNode, CPolyNode, PiecewiseNode, AffinePreNode,
               WSumNode, SupFamilyNode, ComposeNode>
      node;
};

inline FnPtr make_fn(EvaluableFn fn) {
  return std::make_shared<const EvaluableFn>(std::move(fn));
}

inline FnPtr fn_from_poly(FractalPoly p) { return make_fn({PolyNode{std::move(p)}}); }

// Number of variables the function expects; children of the same combinator
// must agree.
inline int fn_arity(const EvaluableFn& fn) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PolyNode> || std::is_same_v<T, CPolyNode>) {
          return 1;
        } else if constexpr (std::is_same_v<T, MonoNode>) {
          return static_cast<int>(n.exps.size());
        } else if constexpr (std::is_same_v<T, PiecewiseNode>) {
          int a = 1;
          for (const auto& p : n.pieces) {
            a = std::max(a, std::max(p.guard.var + 1, fn_arity(*p.fn)));
          }
          return a;
        } else if constexpr (std::is_same_v<T, AffinePreNode>) {
          return fn_arity(*n.fn);
        } else if constexpr (std::is_same_v<T, WSumNode>) {
          int a = 1;
          for (const auto& s : n.summands) a = std::max(a, fn_arity(*s.fn));
          return a;
        } else if constexpr (std::is_same_v<T, SupFamilyNode>) {
          int a = 1;
          for (const auto& f : n.fns) a = std::max(a, fn_arity(*f));
          return a;
        } else {
          return fn_arity(*n.inner);
        }
      },
      fn.node);
}

namespace detail {

inline double pow_alpha_term(double x, double k, double alpha, bool even_power,
                             const char* what) {
  if (x == 0.0 && k == 0.0) return 1.0;
  if (x < 0.0) {
    double ip;
    const bool even_int = std::modf(k, &ip) == 0.0 && std::fmod(k, 2.0) == 0.0 && k > 0.0;
    if (even_power && even_int) return std::pow(-x, k * alpha);  // (x^k)^alpha
    std::ostringstream os;
    os << what << ": negative base " << x << " for exponent " << k
       << (even_power ? "*alpha (not an even integer)" : "*alpha");
    throw eval_domain_error(os.str());
  }
  return std::pow(x, k * alpha);
}

}  // namespace detail

inline double eval_fn(const EvaluableFn& fn, const Point& x, const EvalEnv& env);

inline double eval_fn(const FnPtr& fn, const Point& x, const EvalEnv& env) {
  return eval_fn(*fn, x, env);
}

inline double eval_fn(const EvaluableFn& fn, const Point& x, const EvalEnv& env) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PolyNode>) {
          if (std::fabs(n.poly.alpha - env.alpha) > 1e-15) {
            std::ostringstream os;
            os << "fpoly alpha " << n.poly.alpha << " does not match query alpha "
               << env.alpha;
            throw input_error(os.str());
          }
          const double v = x.at(0);
          double acc = 0.0;
          for (const auto& t : n.poly.terms) {
            acc += t.coeff *
                   detail::pow_alpha_term(v, t.k, env.alpha, env.even_power, "fpoly");
          }
          return acc;
        } else if constexpr (std::is_same_v<T, MonoNode>) {
          double acc = n.coeff;
          for (size_t i = 0; i < n.exps.size(); ++i) {
            acc *= detail::pow_alpha_term(x.at(i), n.exps[i], env.alpha,
                                          env.even_power, "fmono");
          }
          return acc;
        } else if constexpr (std::is_same_v<T, CPolyNode>) {
          const double v = x.at(0);
          double acc = 0.0;
          for (size_t i = n.coeffs.size(); i-- > 0;) acc = acc * v + n.coeffs[i];
          return acc;
        } else if constexpr (std::is_same_v<T, PiecewiseNode>) {
          for (const auto& p : n.pieces) {
            if (p.guard.matches(x)) return eval_fn(*p.fn, x, env);
          }
          std::ostringstream os;
          os << "piecewise: no guard matches point (";
          for (size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
          os << ")";
          throw eval_domain_error(os.str());
        } else if constexpr (std::is_same_v<T, AffinePreNode>) {
          Point y(x.size());
          for (size_t i = 0; i < x.size(); ++i) y[i] = n.scale * x[i] + n.offset;
          return eval_fn(*n.fn, y, env);
        } else if constexpr (std::is_same_v<T, WSumNode>) {
          double acc = 0.0;
          for (const auto& s : n.summands) {
            if (!(s.w >= 0.0)) throw input_error("weighted sum requires weights >= 0");
            acc += s.w * eval_fn(*s.fn, x, env);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, SupFamilyNode>) {
          if (n.fns.empty()) throw input_error("sup family must be nonempty");
          double acc = -std::numeric_limits<double>::infinity();
          for (const auto& f : n.fns) acc = std::max(acc, eval_fn(*f, x, env));
          return acc;
        } else {
          const double inner = eval_fn(*n.inner, x, env);
          return eval_fn(*n.outer, Point{inner}, env);
        }
      },
      fn.node);
}

// ---------------------------------------------------------------------------
// E-maps: E : R^n -> R^n, n in {1,2,3}, classical maps over the reals.
// ---------------------------------------------------------------------------

struct AffineMap {
  std::vector<std::vector<double>> matrix;  // n x n
  std::vector<double> offset;               // n
};

// E(x)_i = f_i(x_i), each component a one-variable function of its own
// coordinate.
struct ComponentwiseMap {
  std::vector<FnPtr> fns;
};

struct IdentityMap {};

struct EMap {
  int dim;
  std::variant<AffineMap, ComponentwiseMap, IdentityMap> map;
};

inline Point apply_emap(const EMap& e, const Point& x, const EvalEnv& env) {
  if (static_cast<int>(x.size()) != e.dim) {
    std::ostringstream os;
    os << "emap dimension " << e.dim << " does not match point dimension " << x.size();
    throw input_error(os.str());
  }
  return std::visit(
      [&](const auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AffineMap>) {
          Point y(x.size(), 0.0);
          for (size_t i = 0; i < x.size(); ++i) {
            double acc = m.offset[i];
            for (size_t j = 0; j < x.size(); ++j) acc += m.matrix[i][j] * x[j];
            y[i] = acc;
          }
          return y;
        } else if constexpr (std::is_same_v<T, ComponentwiseMap>) {
          Point y(x.size());
          for (size_t i = 0; i < x.size(); ++i) {
            y[i] = eval_fn(*m.fns[i], Point{x[i]}, env);
          }
          return y;
        } else {
          return x;
        }
      },
      e.map);
}

inline EMap identity_emap(int dim) { return EMap{dim, IdentityMap{}}; }

// ---------------------------------------------------------------------------
// Regions. Box covers intervals (dim 1); simplices may be lower-dimensional
// (a segment in the plane is a valid 1-simplex with 2 vertices).
// ---------------------------------------------------------------------------

inline constexpr double kFaceTol = 1e-12;

struct BoxRegion {
  Point lo;
  Point hi;
};

struct SimplexRegion {
  std::vector<Point> verts;  // k+1 affinely independent vertices in R^n, k <= n
  bool closed = true;
};

struct HalfspacesRegion {
  std::vector<Point> normals;   // n . x <= offset, conjunction
  std::vector<double> offsets;
  BoxRegion bbox;               // sampling envelope
};

struct RegionSpec {
  int dim;
  std::variant<BoxRegion, SimplexRegion, HalfspacesRegion> region;
};

inline RegionSpec make_box(Point lo, Point hi) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw input_error("box requires matching nonempty lo/hi");
  }
  for (size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) {
      std::ostringstream os;
      os << "box requires lo < hi per axis, axis " << i << " has [" << lo[i] << ", "
         << hi[i] << "]";
      throw input_error(os.str());
    }
  }
  const int d = static_cast<int>(lo.size());
  return RegionSpec{d, BoxRegion{std::move(lo), std::move(hi)}};
}

inline RegionSpec make_interval_region(double lo, double hi) {
  return make_box({lo}, {hi});
}

inline RegionSpec make_simplex(std::vector<Point> verts, bool closed) {
  if (verts.size() < 2) throw input_error("simplex requires at least 2 vertices");
  const size_t n = verts[0].size();
  if (n == 0 || verts.size() > n + 1) {
    throw input_error("simplex requires k+1 vertices in R^n with k <= n");
  }
  for (const auto& v : verts) {
    if (v.size() != n) throw input_error("simplex vertices must share a dimension");
  }
  return RegionSpec{static_cast<int>(n), SimplexRegion{std::move(verts), closed}};
}

namespace detail {

// Solves the k x k system A y = b in place by Gaussian elimination with
// partial pivoting. Returns false when singular.
inline bool solve_small(std::vector<std::vector<double>>& A, std::vector<double>& b) {
  const size_t k = b.size();
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < k; ++r) {
      if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
    }
    if (std::fabs(A[piv][col]) < 1e-14) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = col + 1; r < k; ++r) {
      const double f = A[r][col] / A[col][col];
      for (size_t c = col; c < k; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  for (size_t col = k; col-- > 0;) {
    b[col] /= A[col][col];
    for (size_t r = 0; r < col; ++r) b[r] -= A[r][col] * b[col];
  }
  return true;
}

// Barycentric coordinates of x with respect to the simplex. Also reports the
// distance from the simplex's affine hull (nonzero for lower-dimensional
// simplices embedded in a larger space).
inline bool barycentric(const SimplexRegion& s, const Point& x,
                        std::vector<double>& mu, double& hull_residual) {
  const size_t k = s.verts.size() - 1;
  const size_t n = x.size();
  std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
  std::vector<double> rhs(k, 0.0);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      double dot = 0.0;
      for (size_t c = 0; c < n; ++c) {
        dot += (s.verts[i + 1][c] - s.verts[0][c]) * (s.verts[j + 1][c] - s.verts[0][c]);
      }
      gram[i][j] = dot;
    }
    double dot = 0.0;
    for (size_t c = 0; c < n; ++c) {
      dot += (s.verts[i + 1][c] - s.verts[0][c]) * (x[c] - s.verts[0][c]);
    }
    rhs[i] = dot;
  }
  if (!solve_small(gram, rhs)) return false;
  mu.assign(k + 1, 0.0);
  double sum = 0.0;
  for (size_t i = 0; i < k; ++i) {
    mu[i + 1] = rhs[i];
    sum += rhs[i];
  }
  mu[0] = 1.0 - sum;
  double res2 = 0.0;
  for (size_t c = 0; c < n; ++c) {
    double recon = 0.0;
    for (size_t i = 0; i <= k; ++i) recon += mu[i] * s.verts[i][c];
    const double d = x[c] - recon;
    res2 += d * d;
  }
  hull_residual = std::sqrt(res2);
  return true;
}

}  // namespace detail

// Signed outside-margin: <= 0 means the point is a member (boundary included
// for closed shapes), > 0 measures how far outside it sits. Open simplices
// treat the boundary itself as outside (margin 0 there).
inline double region_margin(const RegionSpec& r, const Point& x) {
  if (static_cast<int>(x.size()) != r.dim) {
    std::ostringstream os;
    os << "region dimension " << r.dim << " does not match point dimension "
       << x.size();
    throw input_error(os.str());
  }
  return std::visit(
      [&](const auto& reg) -> double {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, BoxRegion>) {
          double m = -std::numeric_limits<double>::infinity();
          for (size_t i = 0; i < x.size(); ++i) {
            m = std::max(m, std::max(reg.lo[i] - x[i], x[i] - reg.hi[i]));
          }
          return m;
        } else if constexpr (std::is_same_v<T, SimplexRegion>) {
          std::vector<double> mu;
          double hull_res = 0.0;
          if (!detail::barycentric(reg, x, mu, hull_res)) {
            throw input_error("simplex is degenerate (affinely dependent vertices)");
          }
          double min_mu = std::numeric_limits<double>::infinity();
          for (double m : mu) min_mu = std::min(min_mu, m);
          const double inside = reg.closed ? -min_mu : (min_mu > kFaceTol ? -min_mu : 0.0);
          return hull_res > kFaceTol ? std::max(inside, hull_res) : inside;
        } else {
          double m = -std::numeric_limits<double>::infinity();
          for (size_t i = 0; i < reg.normals.size(); ++i) {
            double dot = 0.0;
            for (size_t c = 0; c < x.size(); ++c) dot += reg.normals[i][c] * x[c];
            m = std::max(m, dot - reg.offsets[i]);
          }
          return m;
        }
      },
      r.region);
}

inline bool region_contains(const RegionSpec& r, const Point& x) {
  return std::visit(
      [&](const auto& reg) -> bool {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, SimplexRegion>) {
          std::vector<double> mu;
          double hull_res = 0.0;
          if (!detail::barycentric(reg, x, mu, hull_res)) {
            throw input_error("simplex is degenerate (affinely dependent vertices)");
          }
          if (hull_res > kFaceTol) return false;
          double min_mu = std::numeric_limits<double>::infinity();
          for (double m : mu) min_mu = std::min(min_mu, m);
          return reg.closed ? min_mu >= -kFaceTol : min_mu > kFaceTol;
        } else {
          return region_margin(r, x) <= kFaceTol;
        }
      },
      r.region);
}

// Flip every simplex in the region to open boundary semantics (CLI flag).
inline void set_simplices_open(RegionSpec& r) {
  if (auto* s = std::get_if<SimplexRegion>(&r.region)) s->closed = false;
}

}  // namespace fractal_ineq
