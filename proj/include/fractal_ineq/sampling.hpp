#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fractal_ineq/evaluable.hpp"

namespace fractal_ineq {

// Deterministic 64-bit PRNG (splitmix64). Fixed algorithm by contract so
// witnesses reproduce across platforms.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

// Radical-inverse (van der Corput) sequence in the given prime base.
inline double radical_inverse(uint64_t base, uint64_t index) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double acc = 0.0;
  while (index > 0) {
    acc += static_cast<double>(index % base) * f;
    index /= base;
    f *= inv;
  }
  return acc;
}

inline constexpr uint64_t kHaltonPrimes[3] = {2, 3, 5};

namespace detail {

// n sorted-uniform spacings turn n uniforms into barycentric weights over an
// n-simplex without rejection.
inline std::vector<double> simplex_weights(const double* u, size_t k) {
  std::vector<double> cuts(u, u + k);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> w(k + 1);
  double prev = 0.0;
  for (size_t i = 0; i < k; ++i) {
    w[i] = cuts[i] - prev;
    prev = cuts[i];
  }
  w[k] = 1.0 - prev;
  return w;
}

}  // namespace detail

// A sample space turns fixed-size blocks of uniforms into points of the
// target set, and also carries a finite deterministic lattice. Rejected
// draws (possible for halfspace conjunctions and lifted sets) come back
// empty; the candidate streams below skip them without disturbing the
// positions of later candidates.
struct SampleSpace {
  int point_dim = 0;
  int n_uniforms = 0;
  std::function<std::optional<Point>(const double*)> from_uniforms;
  std::vector<Point> lattice;
};

inline constexpr size_t kLatticeCap = 16384;

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return v;
}

inline size_t ipow(size_t b, int e) {
  size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Largest per-axis density d <= grid with counter(d) under the lattice cap.
inline int coarsen(int grid, const std::function<size_t(int)>& counter) {
  int d = grid;
  while (d > 1 && counter(d) > kLatticeCap) --d;
  return d;
}

inline std::vector<Point> box_lattice(const BoxRegion& box, int grid) {
  const int dim = static_cast<int>(box.lo.size());
  const int d = coarsen(grid, [&](int g) {
    return ipow(static_cast<size_t>(g) + 1, dim);
  });
  std::vector<std::vector<double>> axes(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    axes[static_cast<size_t>(i)] =
        linspace(box.lo[static_cast<size_t>(i)], box.hi[static_cast<size_t>(i)], d + 1);
  }
  std::vector<Point> out;
  out.reserve(ipow(static_cast<size_t>(d) + 1, dim));
  std::vector<size_t> idx(static_cast<size_t>(dim), 0);
  for (;;) {
    Point p(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) p[static_cast<size_t>(i)] = axes[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
    out.push_back(std::move(p));
    int axis = dim - 1;
    while (axis >= 0) {
      if (++idx[static_cast<size_t>(axis)] <= static_cast<size_t>(d)) break;
      idx[static_cast<size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return out;
}

// Compositions of g into k+1 nonnegative parts = barycentric lattice points.
inline size_t composition_count(int g, int k) {
  size_t num = 1;
  for (int i = 1; i <= k; ++i) num = num * static_cast<size_t>(g + i) / static_cast<size_t>(i);
  return num;
}

inline std::vector<Point> simplex_lattice(const SimplexRegion& s, int grid) {
  const int k = static_cast<int>(s.verts.size()) - 1;
  const int d = coarsen(std::max(grid, 1), [&](int g) { return composition_count(g, k); });
  std::vector<Point> out;
  std::vector<int> parts(static_cast<size_t>(k) + 1, 0);
  const size_t n = s.verts[0].size();
  const std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k) {
      parts[static_cast<size_t>(k)] = left;
      Point p(n, 0.0);
      for (int i = 0; i <= k; ++i) {
        const double mu = static_cast<double>(parts[static_cast<size_t>(i)]) / static_cast<double>(d);
        for (size_t c = 0; c < n; ++c) p[c] += mu * s.verts[static_cast<size_t>(i)][c];
      }
      out.push_back(std::move(p));
      return;
    }
    for (int take = 0; take <= left; ++take) {
      parts[static_cast<size_t>(pos)] = take;
      rec(pos + 1, left - take);
    }
  };
  rec(0, d);
  if (!s.closed) {
    std::vector<Point> interior;
    RegionSpec spec{static_cast<int>(n), s};
    for (auto& p : out) {
      if (region_contains(spec, p)) interior.push_back(std::move(p));
    }
    out = std::move(interior);
  }
  return out;
}

}  // namespace detail

// Sample space of a plain region. Box draws map uniforms axis by axis;
// simplices go through sorted-spacings barycentric weights; halfspace
// conjunctions sample their bounding box and reject misses.
inline SampleSpace make_region_space(const RegionSpec& region, int grid) {
  SampleSpace sp;
  sp.point_dim = region.dim;
  std::visit(
      [&](const auto& reg) {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, BoxRegion>) {
          sp.n_uniforms = region.dim;
          const BoxRegion box = reg;
          sp.from_uniforms = [box](const double* u) -> std::optional<Point> {
            Point p(box.lo.size());
            for (size_t i = 0; i < box.lo.size(); ++i) {
              p[i] = box.lo[i] + u[i] * (box.hi[i] - box.lo[i]);
            }
            return p;
          };
          sp.lattice = detail::box_lattice(box, grid);
        } else if constexpr (std::is_same_v<T, SimplexRegion>) {
          const int k = static_cast<int>(reg.verts.size()) - 1;
          sp.n_uniforms = std::max(k, 1);
          const SimplexRegion simplex = reg;
          sp.from_uniforms = [simplex, k](const double* u) -> std::optional<Point> {
            const std::vector<double> w = detail::simplex_weights(u, static_cast<size_t>(k));
            const size_t n = simplex.verts[0].size();
            Point p(n, 0.0);
            for (int i = 0; i <= k; ++i) {
              for (size_t c = 0; c < n; ++c) {
                p[c] += w[static_cast<size_t>(i)] * simplex.verts[static_cast<size_t>(i)][c];
              }
            }
            return p;
          };
          sp.lattice = detail::simplex_lattice(reg, grid);
        } else {
          sp.n_uniforms = region.dim;
          const HalfspacesRegion hs = reg;
          const RegionSpec whole = region;
          sp.from_uniforms = [hs, whole](const double* u) -> std::optional<Point> {
            Point p(hs.bbox.lo.size());
            for (size_t i = 0; i < hs.bbox.lo.size(); ++i) {
              p[i] = hs.bbox.lo[i] + u[i] * (hs.bbox.hi[i] - hs.bbox.lo[i]);
            }
            if (!region_contains(whole, p)) return std::nullopt;
            return p;
          };
          std::vector<Point> box_pts = detail::box_lattice(hs.bbox, grid);
          for (auto& p : box_pts) {
            if (region_contains(region, p)) sp.lattice.push_back(std::move(p));
          }
        }
      },
      region.region);
  return sp;
}

// ---------------------------------------------------------------------------
// Candidate streams. Generation is a pure function of the index, so a larger
// sample budget extends the stream without reshuffling it, and thread count
// cannot change which candidates exist.
// ---------------------------------------------------------------------------

struct PairCand {
  Point y1;
  Point y2;
};

namespace detail {

// Offset separating a pair's two Halton draws; a plain index shift of 1 in
// base 2 would tie y2's parity to y1's and confine each to half the axis.
inline constexpr uint64_t kHaltonPairStride = 1000003;
inline constexpr uint64_t kHaltonBurnIn = 17;
inline constexpr int kRejectRetries = 32;
inline constexpr uint64_t kRetryJump = 40961;

inline std::optional<Point> halton_draw(const SampleSpace& sp, uint64_t index) {
  double u[8];
  for (uint64_t t = 0; t < static_cast<uint64_t>(kRejectRetries); ++t) {
    const uint64_t i = kHaltonBurnIn + index + t * kRetryJump;
    for (int j = 0; j < sp.n_uniforms; ++j) {
      u[j] = radical_inverse(kHaltonPrimes[j % 3], i + (j / 3) * 7919);
    }
    if (auto p = sp.from_uniforms(u)) return p;
  }
  return std::nullopt;
}

inline std::optional<Point> prng_draw(const SampleSpace& sp, SplitMix64& rng) {
  double u[8];
  for (int t = 0; t < kRejectRetries; ++t) {
    for (int j = 0; j < sp.n_uniforms; ++j) u[j] = rng.uniform01();
    if (auto p = sp.from_uniforms(u)) return p;
  }
  return std::nullopt;
}

// Walks the anti-diagonals of the M x M index square: (0,0), (0,1), (1,0),
// (0,2), (1,1), (2,0), ... so early candidates mix near and far lattice
// points instead of pinning y1 to the first lattice entry.
struct DiagonalWalk {
  size_t m;
  size_t d = 0;
  size_t i = 0;

  explicit DiagonalWalk(size_t m_) : m(m_) {}

  std::pair<size_t, size_t> next() {
    while (i > d || i >= m || d - i >= m) {
      if (i >= d || i >= m - 1) {
        ++d;
        if (d > 2 * (m - 1)) d = 0;
        i = d >= m ? d - (m - 1) : 0;
      } else {
        ++i;
      }
    }
    const auto out = std::make_pair(i, d - i);
    ++i;
    return out;
  }
};

}  // namespace detail

// The pair stream interleaves, per index block of four: one lattice pair
// (anti-diagonal order), two Halton pairs, one PRNG pair.
inline std::vector<PairCand> candidate_pairs(const SampleSpace& sp, long long samples,
                                             uint64_t seed) {
  std::vector<PairCand> out;
  out.reserve(static_cast<size_t>(std::max<long long>(samples, 0)));
  SplitMix64 rng(seed ^ 0xa02b'dbf7'bb3c'0a7ULL);
  detail::DiagonalWalk walk(std::max<size_t>(sp.lattice.size(), 1));
  const bool has_lattice = !sp.lattice.empty();
  for (long long j = 0; j < samples; ++j) {
    const int lane = static_cast<int>(j % 4);
    if (lane == 0 && has_lattice) {
      const auto [a, b] = walk.next();
      out.push_back({sp.lattice[a], sp.lattice[b]});
      continue;
    }
    if (lane == 1 || lane == 2 || (lane == 0 && !has_lattice)) {
      const uint64_t idx = static_cast<uint64_t>(j);
      auto y1 = detail::halton_draw(sp, idx);
      auto y2 = detail::halton_draw(sp, idx + detail::kHaltonPairStride);
      if (y1 && y2) out.push_back({std::move(*y1), std::move(*y2)});
      continue;
    }
    auto y1 = detail::prng_draw(sp, rng);
    auto y2 = detail::prng_draw(sp, rng);
    if (y1 && y2) out.push_back({std::move(*y1), std::move(*y2)});
  }
  return out;
}

// Single-point stream with the same lattice/Halton/PRNG interleave.
inline std::vector<Point> candidate_points(const SampleSpace& sp, long long samples,
                                           uint64_t seed) {
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(std::max<long long>(samples, 0)));
  SplitMix64 rng(seed ^ 0x9062'73c1'4d6a'55e3ULL);
  const bool has_lattice = !sp.lattice.empty();
  size_t li = 0;
  for (long long j = 0; j < samples; ++j) {
    const int lane = static_cast<int>(j % 4);
    if (lane == 0 && has_lattice) {
      out.push_back(sp.lattice[li++ % sp.lattice.size()]);
      continue;
    }
    if (lane == 1 || lane == 2 || (lane == 0 && !has_lattice)) {
      if (auto p = detail::halton_draw(sp, static_cast<uint64_t>(j))) {
        out.push_back(std::move(*p));
      }
      continue;
    }
    if (auto p = detail::prng_draw(sp, rng)) out.push_back(std::move(*p));
  }
  return out;
}

// Mixing-weight grid: grid+1 equally spaced values of [0,1]. Strict modes
// drop the endpoints; the interior values are identical either way, so a
// witness found in one mode reproduces bit-for-bit in the other.
inline std::vector<double> eta_grid(int grid, bool include_endpoints) {
  std::vector<double> etas = detail::linspace(0.0, 1.0, grid + 1);
  if (!include_endpoints) {
    etas.erase(etas.begin());
    etas.pop_back();
  }
  return etas;
}

// Sampled totality check for piecewise definitions: every probed point of the
// region must match some guard.
inline void assert_piecewise_total(const EvaluableFn& fn, const RegionSpec& region,
                                   const EvalEnv& env, long long samples = 10000) {
  const SampleSpace sp = make_region_space(region, 16);
  for (const Point& p : candidate_points(sp, samples, 1)) {
    eval_fn(fn, p, env);  // throws eval_domain_error when no guard matches
  }
}

}  // namespace fractal_ineq
