#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fractal_ineq/sampling.hpp"

namespace fractal_ineq {

enum class CertStatus { NoCounterexampleFound, Counterexample };

// A refutation: the two sampled points, the mixing weight (absent for
// single-point membership checks), both sides of the defining inequality,
// and the excess lhs - rhs.
struct Witness {
  Point y1;
  Point y2;
  std::optional<double> eta;
  double lhs = 0.0;
  double rhs = 0.0;
  double violation = 0.0;
};

struct Budget {
  int grid = 32;
  long long samples = 2048;
  uint64_t seed = 42;

  void validate() const {
    if (grid < 1) throw input_error("budget grid must be >= 1");
    if (samples < 1) throw input_error("budget samples must be >= 1");
  }
};

struct Certificate {
  CertStatus status = CertStatus::NoCounterexampleFound;
  std::optional<Witness> witness;
  Budget budget;
  uint64_t seed = 0;
};

inline int worker_count() {
  if (const char* env = std::getenv("FRACTAL_INEQ_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) throw input_error("FRACTAL_INEQ_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return 1;
}

namespace detail {

// One grid cell of the search: pair index p, eta index e, rank p*|etas|+e.
// The reported event is always the lowest-rank one, which makes the result
// a pure function of the candidate stream regardless of worker count.
struct SearchEvent {
  long long rank;
  bool is_error;
  Witness witness;  // valid when !is_error
  size_t pair_idx;
  size_t eta_idx;
};

template <typename Pred>
inline std::optional<SearchEvent> scan_range(const std::vector<PairCand>& pairs,
                                             const std::vector<double>& etas,
                                             const Pred& pred, size_t begin, size_t end,
                                             const std::atomic<long long>* best_rank) {
  const long long n_eta = static_cast<long long>(etas.size());
  for (size_t p = begin; p < end; ++p) {
    const long long base = static_cast<long long>(p) * n_eta;
    if (best_rank && base >= best_rank->load(std::memory_order_relaxed)) return std::nullopt;
    for (size_t e = 0; e < etas.size(); ++e) {
      const long long rank = base + static_cast<long long>(e);
      try {
        if (auto w = pred(pairs[p].y1, pairs[p].y2, etas[e])) {
          return SearchEvent{rank, false, std::move(*w), p, e};
        }
      } catch (...) {
        return SearchEvent{rank, true, {}, p, e};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Scans pairs x eta grid for the lowest-rank violation. pred returns the
// witness when the candidate violates the inequality beyond tolerance,
// nullopt otherwise; thrown evaluation errors surface exactly as they would
// in a sequential scan (lowest-rank event wins, errors included).
template <typename Pred>
inline Certificate run_pair_search(const std::vector<PairCand>& pairs,
                                   const std::vector<double>& etas, const Pred& pred,
                                   const Budget& budget) {
  Certificate cert;
  cert.budget = budget;
  cert.seed = budget.seed;
  if (pairs.empty() || etas.empty()) return cert;

  const int want = worker_count();
  const int workers = static_cast<int>(
      std::min<size_t>(static_cast<size_t>(want), pairs.size()));
  std::optional<detail::SearchEvent> best;

  if (workers <= 1) {
    best = detail::scan_range(pairs, etas, pred, 0, pairs.size(), nullptr);
  } else {
    std::atomic<long long> best_rank{
        static_cast<long long>(pairs.size()) * static_cast<long long>(etas.size())};
    std::vector<std::optional<detail::SearchEvent>> results(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    const size_t chunk = (pairs.size() + static_cast<size_t>(workers) - 1) /
                         static_cast<size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const size_t begin = static_cast<size_t>(w) * chunk;
        const size_t end = std::min(pairs.size(), begin + chunk);
        auto ev = detail::scan_range(pairs, etas, pred, begin, end, &best_rank);
        if (ev) {
          long long cur = best_rank.load(std::memory_order_relaxed);
          while (ev->rank < cur &&
                 !best_rank.compare_exchange_weak(cur, ev->rank, std::memory_order_relaxed)) {
          }
          results[static_cast<size_t>(w)] = std::move(ev);
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& ev : results) {
      if (ev && (!best || ev->rank < best->rank)) best = std::move(ev);
    }
  }

  if (!best) return cert;
  if (best->is_error) {
    // Deterministic re-raise of the lowest-rank evaluation error.
    pred(pairs[best->pair_idx].y1, pairs[best->pair_idx].y2, etas[best->eta_idx]);
    throw numeric_error("search predicate failed without raising");  // unreachable
  }
  cert.status = CertStatus::Counterexample;
  cert.witness = std::move(best->witness);
  return cert;
}

// Single-point variant used by the membership checks (image subsets and the
// like). Same lowest-rank contract.
template <typename Pred>
inline Certificate run_point_search(const std::vector<Point>& points, const Pred& pred,
                                    const Budget& budget) {
  std::vector<PairCand> pairs;
  pairs.reserve(points.size());
  for (const Point& p : points) pairs.push_back({p, p});
  const std::vector<double> etas = {0.0};
  return run_pair_search(
      pairs, etas,
      [&pred](const Point& y1, const Point&, double) { return pred(y1); }, budget);
}

}  // namespace fractal_ineq
