#pragma once

// Simple-random-walk experiments on the level graphs: exact return
// probabilities by repeated application of the transition operator, a
// Monte Carlo estimator with binomial standard errors, the return-decay
// slope fit that estimates the spectral dimension, and the cross-level
// comparison of return sequences under time renormalization. All of these
// are evidence generators: none of them claims to validate the diffusion
// conjecture they probe.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexacarpet/errors.hpp"
#include "hexacarpet/graph.hpp"
#include "hexacarpet/words.hpp"

namespace hexacarpet {

inline constexpr std::uint64_t kDefaultWalkSeed = 271828182845;
inline constexpr int kExactWalkLevelCap = 6;

// Return-probability data for one start vertex: p_t(x, x) for t = 0..t_max,
// either exact (std_error all zero) or Monte Carlo with binomial errors.
struct WalkStats {
  int n = 0;
  std::uint32_t start = 0;
  int t_max = 0;
  bool monte_carlo = false;
  std::uint64_t trials = 0;  // 0 for exact sequences
  std::uint64_t seed = 0;
  std::vector<double> return_prob;  // index t, size t_max + 1
  std::vector<double> std_error;    // same shape
  double d_s_estimate = std::numeric_limits<double>::quiet_NaN();
  double d_s_band = std::numeric_limits<double>::quiet_NaN();  // +- two sigma
};

// Default start vertices: the all-zeros word is a degree-2 boundary vertex
// (the same geometric corner at every level); the 13...3 word sits in the
// interior from level 2 on. Reports quote both because boundary effects are
// visible at these scales.
inline std::uint32_t boundary_start_vertex(int) { return 0; }

inline std::uint32_t interior_start_vertex(int n) {
  if (n < 1 || n > kMaxWordLevel)
    throw std::invalid_argument("level must be in 1.." + std::to_string(kMaxWordLevel));
  std::uint64_t v = 1;
  for (int i = 1; i < n; ++i) v = v * 6 + 3;
  return static_cast<std::uint32_t>(v);
}

namespace walk_detail {

// One step of the walk distribution: out[y] = sum over x ~ y of in[x]/deg(x).
// Because the transition matrix is row-stochastic and we iterate a row
// vector, the result read at the start vertex is P^t(start, start).
inline void transition_step(const LevelGraph& g, const std::vector<double>& invdeg,
                            const std::vector<double>& in, std::vector<double>& out) {
  const std::uint64_t v_count = g.num_vertices();
  for (std::uint64_t y = 0; y < v_count; ++y) {
    double acc = 0.0;
    for (std::uint32_t i = g.offsets[y]; i < g.offsets[y + 1]; ++i) {
      const std::uint32_t x = g.neighbors[i];
      acc += in[x] * invdeg[x];
    }
    out[y] = acc;
  }
}

inline std::vector<double> inverse_degrees(const LevelGraph& g) {
  std::vector<double> invdeg(g.num_vertices());
  for (std::uint64_t v = 0; v < g.num_vertices(); ++v)
    invdeg[v] = 1.0 / static_cast<double>(g.degree(static_cast<std::uint32_t>(v)));
  return invdeg;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace walk_detail

// Exact p_t(x, x) for t = 0..t_max by t_max sparse applications of the
// transition operator to the indicator of x. Costs O(edges) per step, so a
// level cap (default 6) guards against accidental huge runs; callers that
// know what they are doing may raise it.
inline std::vector<double> exact_return_probability(const LevelGraph& g, std::uint32_t x,
                                                    int t_max,
                                                    int level_cap = kExactWalkLevelCap) {
  if (g.n > level_cap)
    throw ResourceLimitError("exact walk capped at level " + std::to_string(level_cap) +
                             "; raise the cap to go further");
  if (x >= g.num_vertices()) throw std::invalid_argument("start vertex out of range");
  if (t_max < 0) throw std::invalid_argument("step count must be nonnegative");

  const auto invdeg = walk_detail::inverse_degrees(g);
  std::vector<double> dist(g.num_vertices(), 0.0);
  std::vector<double> next(g.num_vertices(), 0.0);
  dist[x] = 1.0;
  std::vector<double> p(static_cast<std::size_t>(t_max) + 1, 0.0);
  p[0] = 1.0;
  for (int t = 1; t <= t_max; ++t) {
    walk_detail::transition_step(g, invdeg, dist, next);
    dist.swap(next);
    p[static_cast<std::size_t>(t)] = dist[x];
  }
  return p;
}

// The same sequence wrapped as WalkStats (exact: zero standard errors).
inline WalkStats exact_walk_stats(const LevelGraph& g, std::uint32_t x, int t_max,
                                  int level_cap = kExactWalkLevelCap) {
  WalkStats stats;
  stats.n = g.n;
  stats.start = x;
  stats.t_max = t_max;
  stats.return_prob = exact_return_probability(g, x, t_max, level_cap);
  stats.std_error.assign(stats.return_prob.size(), 0.0);
  return stats;
}

// Monte Carlo estimate of p_t(x, x) from independent walk trials. Trials are
// processed in fixed blocks of 8192 whose generators are split
// deterministically from the seed, so the result does not depend on how the
// blocks would be scheduled and seed-fixed reruns are bit-identical.
inline WalkStats monte_carlo_walk(const LevelGraph& g, std::uint32_t x, int t_max,
                                  std::uint64_t trials, std::uint64_t seed = kDefaultWalkSeed) {
  if (x >= g.num_vertices()) throw std::invalid_argument("start vertex out of range");
  if (t_max < 0) throw std::invalid_argument("step count must be nonnegative");
  if (trials < 1) throw std::invalid_argument("need at least one trial");

  constexpr std::uint64_t kBlock = 8192;
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(t_max) + 1, 0);
  hits[0] = trials;
  const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    std::mt19937_64 rng(walk_detail::splitmix64(seed ^ walk_detail::splitmix64(b)));
    const std::uint64_t in_block = std::min(kBlock, trials - b * kBlock);
    for (std::uint64_t trial = 0; trial < in_block; ++trial) {
      std::uint32_t at = x;
      for (int t = 1; t <= t_max; ++t) {
        const auto deg = static_cast<std::uint64_t>(g.degree(at));
        const auto pick = static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(rng()) * deg) >> 64);
        at = g.row_begin(at)[pick];
        if (at == x) ++hits[static_cast<std::size_t>(t)];
      }
    }
  }

  WalkStats stats;
  stats.n = g.n;
  stats.start = x;
  stats.t_max = t_max;
  stats.monte_carlo = true;
  stats.trials = trials;
  stats.seed = seed;
  stats.return_prob.resize(hits.size());
  stats.std_error.resize(hits.size());
  const auto denom = static_cast<double>(trials);
  for (std::size_t t = 0; t < hits.size(); ++t) {
    const double p = static_cast<double>(hits[t]) / denom;
    stats.return_prob[t] = p;
    stats.std_error[t] = std::sqrt(p * (1.0 - p) / denom);
  }
  return stats;
}

// Least-squares fit of log p_t against log t over even steps in
// [t_lo, t_hi]; the spectral-dimension estimate is -2 times the slope. Even
// steps only: the level graphs are bipartite, so odd-step returns are
// structural zeros, and short-time parity oscillation would otherwise
// pollute the slope.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double d_s = 0.0;
  double d_s_band = 0.0;  // +- two standard errors of the fitted slope
  int points = 0;
};

inline SlopeFit fit_return_decay(const WalkStats& stats, int t_lo, int t_hi) {
  if (t_lo < 1 || t_hi > stats.t_max || t_lo > t_hi)
    throw std::invalid_argument("fit window must sit inside the computed range");
  std::vector<double> xs, ys;
  for (int t = t_lo + (t_lo % 2); t <= t_hi; t += 2) {
    const double p = stats.return_prob[static_cast<std::size_t>(t)];
    if (p > 0.0) {
      xs.push_back(std::log(static_cast<double>(t)));
      ys.push_back(std::log(p));
    }
  }
  const int m = static_cast<int>(xs.size());
  if (m < 5) throw std::invalid_argument("fit window too narrow: need at least 5 usable points");

  double mx = 0.0, my = 0.0;
  for (int i = 0; i < m; ++i) {
    mx += xs[static_cast<std::size_t>(i)];
    my += ys[static_cast<std::size_t>(i)];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < m; ++i) {
    const double dx = xs[static_cast<std::size_t>(i)] - mx;
    sxx += dx * dx;
    sxy += dx * (ys[static_cast<std::size_t>(i)] - my);
  }
  SlopeFit fit;
  fit.points = m;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.d_s = -2.0 * fit.slope;
  double ss_res = 0.0;
  for (int i = 0; i < m; ++i) {
    const double r = ys[static_cast<std::size_t>(i)] - fit.intercept -
                     fit.slope * xs[static_cast<std::size_t>(i)];
    ss_res += r * r;
  }
  const double slope_var = m > 2 ? ss_res / (m - 2) / sxx : 0.0;
  fit.d_s_band = 4.0 * std::sqrt(slope_var);  // two sigma on d_s = -2 slope
  return fit;
}

inline double estimate_ds(const WalkStats& stats, int t_lo, int t_hi) {
  return fit_return_decay(stats, t_lo, t_hi).d_s;
}

// Sup-distance between the coarse and fine return sequences after
// renormalizing both time and amplitude, sampled at even coarse steps in
// [burn_in, t_hi]. Time: the fine index is the nearest even integer to
// tau * t (both sequences vanish at odd steps, so rounding to odd indices
// would compare structural zeros against positive values). Amplitude: each
// sequence is scaled by its vertex count, turning return probabilities into
// return densities with respect to the normalized counting measure — the
// quantity that can converge across levels at all, since one level-n step of
// splitting multiplies the vertex count by 6 while tau^{d_s/2} = 6 exactly,
// leaving the raw probabilities a factor 6 apart in every regime. Identical
// graphs with tau = 1 therefore give distance 0. To probe convergence, call
// with windows scaled by tau per level pair so all pairs are compared over
// the same renormalized-time range. Evidence metric, no pass/fail semantics.
struct CrossingReport {
  int coarse_n = 0;
  int fine_n = 0;
  std::uint32_t coarse_start = 0;
  std::uint32_t fine_start = 0;
  double tau = 0.0;
  int t_lo = 0;
  int t_hi = 0;
  int samples = 0;
  double sup_distance = 0.0;
};

inline CrossingReport renormalized_crossing(const LevelGraph& coarse, const LevelGraph& fine,
                                            double tau, int burn_in = 30, int t_hi = 60,
                                            int level_cap = kExactWalkLevelCap) {
  if (!(tau > 0.0)) throw std::invalid_argument("time scale must be positive");
  if (burn_in < 1 || burn_in > t_hi) throw std::invalid_argument("bad comparison window");

  CrossingReport report;
  report.coarse_n = coarse.n;
  report.fine_n = fine.n;
  report.coarse_start = boundary_start_vertex(coarse.n);
  report.fine_start = boundary_start_vertex(fine.n);
  report.tau = tau;
  report.t_lo = burn_in;
  report.t_hi = t_hi;

  const auto nearest_even = [](double x) {
    return static_cast<int>(std::llround(x / 2.0)) * 2;
  };
  const int fine_t_max = nearest_even(tau * t_hi) + 2;
  const auto p_coarse = exact_return_probability(coarse, report.coarse_start, t_hi, level_cap);
  const auto p_fine = exact_return_probability(fine, report.fine_start, fine_t_max, level_cap);
  const auto v_coarse = static_cast<double>(coarse.num_vertices());
  const auto v_fine = static_cast<double>(fine.num_vertices());

  for (int t = burn_in + (burn_in % 2); t <= t_hi; t += 2) {
    const int ft = nearest_even(tau * static_cast<double>(t));
    const double d = std::abs(v_fine * p_fine[static_cast<std::size_t>(ft)] -
                              v_coarse * p_coarse[static_cast<std::size_t>(t)]);
    report.sup_distance = std::max(report.sup_distance, d);
    ++report.samples;
  }
  return report;
}

}  // namespace hexacarpet
