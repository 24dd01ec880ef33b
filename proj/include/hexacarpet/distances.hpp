#pragma once

// Graph-distance machinery for the level graphs: single-source BFS, exact
// radius/diameter in an exhaustive all-source mode and a bounded
// elimination mode (double-sweep seeding plus per-vertex eccentricity
// bounds, folded across the six leading-letter symmetries), the inner/outer
// circumference cycles with the measured radius-path decomposition, the
// conjectured closed forms with their residuals, and the exact dyadic
// metric on the subdivision 1-skeleton.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hexacarpet/errors.hpp"
#include "hexacarpet/geometry.hpp"
#include "hexacarpet/graph.hpp"
#include "hexacarpet/rational.hpp"
#include "hexacarpet/words.hpp"

namespace hexacarpet {

inline constexpr std::uint16_t kUnreached = std::numeric_limits<std::uint16_t>::max();

namespace dist_detail {

// BFS into a caller-owned distance buffer; returns the eccentricity of the
// source. The buffer and queue are reused across calls to avoid churn.
inline std::uint16_t bfs_into(const LevelGraph& g, std::uint32_t source,
                              std::vector<std::uint16_t>& dist, std::vector<std::uint32_t>& queue) {
  const std::uint64_t V = g.num_vertices();
  dist.assign(V, kUnreached);
  queue.resize(V);
  dist[source] = 0;
  queue[0] = source;
  std::size_t head = 0, tail = 1;
  std::uint16_t ecc = 0;
  while (head < tail) {
    const std::uint32_t u = queue[head++];
    const std::uint16_t du = dist[u];
    ecc = du;
    for (const std::uint32_t* p = g.row_begin(u); p != g.row_end(u); ++p) {
      if (dist[*p] == kUnreached) {
        dist[*p] = static_cast<std::uint16_t>(du + 1);
        queue[tail++] = *p;
      }
    }
  }
  if (tail != V) throw std::logic_error("bfs: graph is not connected");
  return ecc;
}

}  // namespace dist_detail

// Exact shortest-path distances from one vertex to every vertex.
inline std::vector<std::uint16_t> bfs_distances(const LevelGraph& g, std::uint32_t source) {
  if (source >= g.num_vertices()) throw std::invalid_argument("bfs: source out of range");
  std::vector<std::uint16_t> dist;
  std::vector<std::uint32_t> queue;
  dist_detail::bfs_into(g, source, dist, queue);
  return dist;
}

enum class RadiusDiameterMode { kExhaustive, kBounded };

// Exact radius and diameter. In exhaustive mode `central` and `peripheral`
// are the complete sorted sets of central/peripheral vertices. In bounded
// mode the values are still exact, but the two sets only contain vertices
// whose eccentricity the search certified (at least one witness each) and
// `sets_complete` is false.
struct RadiusDiameterResult {
  int n = 0;
  std::uint64_t radius = 0;
  std::uint64_t diameter = 0;
  std::vector<std::uint32_t> central;
  std::vector<std::uint32_t> peripheral;
  bool sets_complete = false;
  std::uint64_t bfs_count = 0;  // how many single-source sweeps were spent
};

namespace dist_detail {

inline RadiusDiameterResult exhaustive_radius_diameter(const LevelGraph& g) {
  const std::uint64_t V = g.num_vertices();
  RadiusDiameterResult out;
  out.n = g.n;
  out.sets_complete = true;
  std::vector<std::uint16_t> dist;
  std::vector<std::uint32_t> queue;
  std::uint16_t radius = std::numeric_limits<std::uint16_t>::max(), diameter = 0;
  std::vector<std::uint16_t> ecc(V);
  for (std::uint64_t v = 0; v < V; ++v) {
    const std::uint16_t e = bfs_into(g, static_cast<std::uint32_t>(v), dist, queue);
    ecc[v] = e;
    radius = std::min(radius, e);
    diameter = std::max(diameter, e);
  }
  out.bfs_count = V;
  out.radius = radius;
  out.diameter = diameter;
  for (std::uint64_t v = 0; v < V; ++v) {
    if (ecc[v] == radius) out.central.push_back(static_cast<std::uint32_t>(v));
    if (ecc[v] == diameter) out.peripheral.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

// Bounded mode. Eccentricity is constant on the orbits of the leading-letter
// maps, and every orbit consists of the six vertices sharing a tail (all
// leading letters occur), so bounds are kept per tail r = v mod 6^(n-1).
// Standard eccentricity bounds from a swept source s apply to every vertex:
//   ecc(v) >= max(d(s,v), ecc(s) - d(s,v)),   ecc(v) <= ecc(s) + d(s,v),
// and each sweep tightens the tail bounds via all six of its orbit images.
inline RadiusDiameterResult bounded_radius_diameter(const LevelGraph& g) {
  const std::uint64_t V = g.num_vertices();
  const std::uint64_t B = V / 6;  // tails per orbit block
  RadiusDiameterResult out;
  out.n = g.n;

  std::vector<std::uint16_t> lb(B, 0), ub(B, std::numeric_limits<std::uint16_t>::max());
  std::vector<std::uint16_t> dist;
  std::vector<std::uint32_t> queue;

  std::uint16_t diameter_lb = 0;
  std::uint16_t radius_ub = std::numeric_limits<std::uint16_t>::max();
  // (vertex, eccentricity) pairs for every swept source, plus the farthest
  // vertices seen from sources realizing the final diameter.
  std::vector<std::pair<std::uint32_t, std::uint16_t>> swept;
  std::vector<std::pair<std::uint32_t, std::uint16_t>> far_witnesses;

  auto sweep = [&](std::uint32_t s) -> std::uint16_t {
    const std::uint16_t e = bfs_into(g, s, dist, queue);
    ++out.bfs_count;
    swept.push_back({s, e});
    radius_ub = std::min(radius_ub, e);
    if (e > diameter_lb) diameter_lb = e;
    for (std::uint64_t v = 0; v < V; ++v) {
      if (dist[v] == e) far_witnesses.push_back({static_cast<std::uint32_t>(v), e});
      const std::uint64_t r = v % B;
      const auto d = dist[v];
      const auto l = static_cast<std::uint16_t>(std::max<int>(d, e - d));
      if (l > lb[r]) lb[r] = l;
      const auto u = static_cast<std::uint16_t>(e + d);
      if (u < ub[r]) ub[r] = u;
    }
    // The swept tail is now exact.
    lb[s % B] = ub[s % B] = e;
    return e;
  };

  // Seeding: a corner word, then repeated far-point hops (double sweep).
  std::uint32_t s0 = 0;
  sweep(s0);
  for (int i = 0; i < 3; ++i) {
    std::uint32_t far = 0;
    for (std::uint64_t v = 1; v < V; ++v)
      if (dist[v] > dist[far]) far = static_cast<std::uint32_t>(v);
    sweep(far);
  }

  // Elimination: alternately certify the diameter (attack the largest upper
  // bound) and the radius (attack the smallest lower bound) until the tail
  // bounds pin both.
  while (true) {
    std::uint64_t best_d = B, best_r = B;
    std::uint16_t best_ub = diameter_lb, best_lb = radius_ub;
    for (std::uint64_t r = 0; r < B; ++r) {
      if (ub[r] > best_ub) {
        best_ub = ub[r];
        best_d = r;
      }
      if (lb[r] < best_lb) {
        best_lb = lb[r];
        best_r = r;
      }
    }
    if (best_d == B && best_r == B) break;
    if (best_d != B) sweep(static_cast<std::uint32_t>(best_d));
    if (best_r != B && best_r != best_d) sweep(static_cast<std::uint32_t>(best_r));
  }

  out.radius = radius_ub;
  out.diameter = diameter_lb;
  // Certified witnesses, expanded through their orbits.
  auto add_orbit = [&](std::uint32_t v, std::vector<std::uint32_t>& into) {
    const std::uint64_t r = v % B;
    for (std::uint64_t a = 0; a < 6; ++a) into.push_back(static_cast<std::uint32_t>(a * B + r));
  };
  for (const auto& [v, e] : swept) {
    if (e == radius_ub) add_orbit(v, out.central);
    if (e == diameter_lb) add_orbit(v, out.peripheral);
  }
  for (const auto& [v, e] : far_witnesses) {
    // d(s, v) = ecc(s) = D forces ecc(v) = D.
    if (e == diameter_lb) add_orbit(v, out.peripheral);
  }
  auto finish = [](std::vector<std::uint32_t>& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  };
  finish(out.central);
  finish(out.peripheral);
  return out;
}

}  // namespace dist_detail

inline RadiusDiameterResult radius_diameter(const LevelGraph& g, RadiusDiameterMode mode) {
  if (g.num_vertices() == 0) throw std::invalid_argument("radius_diameter: empty graph");
  return mode == RadiusDiameterMode::kExhaustive ? dist_detail::exhaustive_radius_diameter(g)
                                                 : dist_detail::bounded_radius_diameter(g);
}

// Length of the initial segment of the canonical radius path that runs along
// the central ring. The canonical path starts at `central`, ends at the
// smallest vertex at distance exactly ecc(central), and is the
// lexicographically smallest shortest path between them.
inline std::uint64_t ring_prefix_of_radius_path(const LevelGraph& g, std::uint32_t central) {
  const std::vector<std::uint16_t> dc = bfs_distances(g, central);
  const std::uint16_t ecc = *std::max_element(dc.begin(), dc.end());
  std::uint32_t target = 0;
  while (dc[target] != ecc) ++target;
  const std::vector<std::uint16_t> dt = bfs_distances(g, target);

  std::uint64_t prefix = 0;
  bool on_ring = is_inner_ring(Word::from_index(central, g.n));
  std::uint32_t cur = central;
  while (cur != target) {
    std::uint32_t next = std::numeric_limits<std::uint32_t>::max();
    for (const std::uint32_t* p = g.row_begin(cur); p != g.row_end(cur); ++p) {
      if (dc[*p] == dc[cur] + 1 && dt[*p] + 1 == dt[cur]) {
        next = std::min(next, *p);
      }
    }
    if (next == std::numeric_limits<std::uint32_t>::max())
      throw std::logic_error("radius path walk lost the geodesic");
    if (on_ring && is_inner_ring(Word::from_index(next, g.n)))
      ++prefix;
    else
      on_ring = false;
    cur = next;
  }
  return prefix;
}

// The two circumference cycles of a level plus the measured ring prefix of
// the canonical radius path. Verifies that the ring triangles and the
// boundary triangles each induce a single cycle.
struct CircumferenceReport {
  std::vector<std::uint64_t> inn_cycle;
  std::vector<std::uint64_t> out_cycle;
  std::uint64_t pinn_len = 0;
};

inline CircumferenceReport circumference_paths(const LevelGraph& g,
                                               const RadiusDiameterResult* rd = nullptr) {
  CircumferenceReport rep;
  rep.inn_cycle = hole_cycle(g.n);

  // Outer cycle: walk the boundary triangles the same way the ring is walked.
  std::vector<std::uint64_t> outer;
  for (std::uint64_t v = 0; v < g.num_vertices(); ++v) {
    if (boundary_contact(Word::from_index(v, g.n)) != BoundaryContact::kNone) outer.push_back(v);
  }
  auto outer_neighbors = [&](std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (const Word& w : word_neighbors(Word::from_index(v, g.n)))
      if (boundary_contact(w) != BoundaryContact::kNone) out.push_back(w.value());
    return out;
  };
  const std::uint64_t start = outer.front();
  std::uint64_t prev = start;
  auto nb0 = outer_neighbors(start);
  if (nb0.size() != 2) throw std::logic_error("outer circumference is not 2-regular");
  rep.out_cycle.push_back(start);
  rep.out_cycle.push_back(std::min(nb0[0], nb0[1]));
  while (rep.out_cycle.back() != start) {
    auto nb = outer_neighbors(rep.out_cycle.back());
    if (nb.size() != 2) throw std::logic_error("outer circumference is not 2-regular");
    const std::uint64_t next = (nb[0] == prev) ? nb[1] : nb[0];
    prev = rep.out_cycle.back();
    rep.out_cycle.push_back(next);
  }
  rep.out_cycle.pop_back();
  if (rep.out_cycle.size() != outer.size())
    throw std::logic_error("outer circumference is not a single cycle");

  RadiusDiameterResult local;
  if (!rd) {
    local = radius_diameter(g, g.n <= 6 ? RadiusDiameterMode::kExhaustive
                                        : RadiusDiameterMode::kBounded);
    rd = &local;
  }
  rep.pinn_len = ring_prefix_of_radius_path(g, rd->central.front());
  return rep;
}

// Per-level distance summary with the conjectured-formula residuals; a
// residual of zero means the measurement matches the formula exactly.
struct DistanceReport {
  int n = 0;
  std::uint64_t radius = 0;
  std::uint64_t diameter = 0;
  std::uint64_t central_count = 0;
  std::uint64_t peripheral_count = 0;
  bool counts_complete = false;
  std::uint64_t inn_len = 0;
  std::uint64_t out_len = 0;
  std::uint64_t pinn_len = 0;
  std::int64_t dadj = 0;  // ring prefix + previous diameter - radius (levels >= 2)
  std::int64_t radj = 0;  // twice the radius minus the diameter
  std::int64_t radius_formula_residual = 0;
  std::int64_t diameter_formula_residual = 0;
  std::int64_t radius_recurrence_residual = 0;    // levels >= 3
  std::int64_t diameter_recurrence_residual = 0;  // levels >= 3
  std::int64_t pinn_formula_residual = 0;         // levels >= 2
  std::int64_t dadj_formula_residual = 0;         // levels >= 2
  std::int64_t radj_formula_residual = 0;
};

inline std::int64_t radius_closed_form(int n) {
  const std::int64_t sign = (n % 2 == 0) ? 1 : -1;
  const std::int64_t num = (std::int64_t{2} << n) * (13 + 3 * std::int64_t{n}) + sign - 9;
  if (num % 18 != 0) throw std::logic_error("radius closed form is not integral");
  return num / 18;
}

inline std::int64_t diameter_closed_form(int n) {
  const std::int64_t sign = (n % 2 == 0) ? -1 : 1;  // (-1)^(n-1)
  const std::int64_t num = (std::int64_t{1} << (n - 1)) * (31 + 12 * std::int64_t{n}) + 2 * sign - 18;
  if (num % 9 != 0) throw std::logic_error("diameter closed form is not integral");
  return num / 9;
}

inline std::int64_t dadj_closed_form(int n) {
  const std::int64_t sign = (n % 2 == 0) ? 1 : -1;
  return ((std::int64_t{1} << n) - sign - 3) / 6;
}

inline std::int64_t radj_closed_form(int n) {
  const std::int64_t sign = (n % 2 == 0) ? 1 : -1;
  return (7 * (std::int64_t{1} << n) + 2 * sign + 6) / 6;
}

// Distance summaries for levels 1..max_n. Levels up to `exhaustive_cap` run
// the all-source sweep (complete central/peripheral sets); deeper levels use
// the bounded search. Throws if the radius/diameter sandwich R <= D <= 2R
// ever fails.
inline std::vector<DistanceReport> conjecture_tables(int max_n, int exhaustive_cap = 6) {
  if (max_n < 1 || max_n > kMaxWordLevel)
    throw ResourceLimitError("conjecture_tables level must be in 1.." + std::to_string(kMaxWordLevel));
  std::vector<DistanceReport> out;
  for (int n = 1; n <= max_n; ++n) {
    const LevelGraph g = build_word_graph(n);
    const RadiusDiameterResult rd = radius_diameter(
        g, n <= exhaustive_cap ? RadiusDiameterMode::kExhaustive : RadiusDiameterMode::kBounded);
    if (!(rd.radius <= rd.diameter && rd.diameter <= 2 * rd.radius))
      throw std::logic_error("radius/diameter sandwich violated");
    const CircumferenceReport cp = circumference_paths(g, &rd);

    DistanceReport r;
    r.n = n;
    r.radius = rd.radius;
    r.diameter = rd.diameter;
    r.central_count = rd.central.size();
    r.peripheral_count = rd.peripheral.size();
    r.counts_complete = rd.sets_complete;
    r.inn_len = cp.inn_cycle.size();
    r.out_len = cp.out_cycle.size();
    r.pinn_len = cp.pinn_len;
    const auto R = static_cast<std::int64_t>(rd.radius);
    const auto D = static_cast<std::int64_t>(rd.diameter);
    r.radj = 2 * R - D;
    r.radius_formula_residual = R - radius_closed_form(n);
    r.diameter_formula_residual = D - diameter_closed_form(n);
    r.radj_formula_residual = r.radj - radj_closed_form(n);
    if (n >= 2) {
      const auto& prev = out.back();
      r.dadj = static_cast<std::int64_t>(r.pinn_len) + static_cast<std::int64_t>(prev.diameter) - R;
      r.pinn_formula_residual =
          static_cast<std::int64_t>(r.pinn_len) - ((std::int64_t{1} << n) + 1);
      r.dadj_formula_residual = r.dadj - dadj_closed_form(n - 1);
    }
    if (n >= 3) {
      const auto& p1 = out[static_cast<std::size_t>(n - 2)];  // level n-1
      const auto& p2 = out[static_cast<std::size_t>(n - 3)];  // level n-2
      const std::int64_t parity = (n % 2 == 0) ? 0 : 1;       // (1 - (-1)^n) / 2
      r.radius_recurrence_residual =
          R - (4 * static_cast<std::int64_t>(p1.radius) - 4 * static_cast<std::int64_t>(p2.radius) -
               parity);
      const std::int64_t dparity = (n % 2 == 0) ? 4 : 0;  // 2 (1 + (-1)^n)
      r.diameter_recurrence_residual =
          D - (4 * static_cast<std::int64_t>(p1.diameter) -
               4 * static_cast<std::int64_t>(p2.diameter) - dparity);
    }
    out.push_back(std::move(r));
  }
  return out;
}

// The level-n subdivision 1-skeleton with every edge of exact length 2^(-n):
// vertices are the subdivision points, edges the triangle sides. Distances
// are dyadic rationals obtained from hop counts.
class SkeletonMetric {
 public:
  SkeletonMetric(int n, std::vector<BaryPoint> points, LevelGraph skeleton)
      : n_(n), points_(std::move(points)), skeleton_(std::move(skeleton)) {}

  int level() const { return n_; }
  std::uint64_t num_points() const { return points_.size(); }
  const std::vector<BaryPoint>& points() const { return points_; }
  const LevelGraph& skeleton() const { return skeleton_; }

  // Id of an exact point; throws when the point is not a level-n vertex.
  std::uint32_t point_id(const BaryPoint& p) const {
    const auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p)
      throw std::invalid_argument("skeleton point is not a vertex of this level");
    return static_cast<std::uint32_t>(it - points_.begin());
  }

  std::vector<std::uint16_t> hops_from(std::uint32_t x) const {
    if (x >= points_.size()) throw std::invalid_argument("skeleton point id out of range");
    return bfs_distances(skeleton_, x);
  }

  Rational distance(std::uint32_t x, std::uint32_t y) const {
    if (y >= points_.size()) throw std::invalid_argument("skeleton point id out of range");
    const auto hops = hops_from(x);
    return Rational(hops[y], std::int64_t{1} << n_);
  }

 private:
  int n_;
  std::vector<BaryPoint> points_;
  LevelGraph skeleton_;
};

inline SkeletonMetric skeleton_metric(const SubdivisionLevel& level) {
  const int n = level.level();
  std::vector<BaryPoint> pts;
  pts.reserve(level.size() * 3);
  for (std::uint64_t i = 0; i < level.size(); ++i)
    for (const auto& v : level.tri(i)) pts.push_back(v);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(level.size() * 3);
  auto id = [&](const BaryPoint& p) {
    return static_cast<std::uint32_t>(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin());
  };
  for (std::uint64_t i = 0; i < level.size(); ++i) {
    const auto& t = level.tri(i);
    for (int s = 0; s < 3; ++s) {
      const auto a = id(t[static_cast<std::size_t>(s)]);
      const auto b = id(t[static_cast<std::size_t>((s + 1) % 3)]);
      edges.push_back(std::minmax(a, b));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  LevelGraph g;
  g.n = n;
  g.offsets.assign(pts.size() + 1, 0);
  for (const auto& [a, b] : edges) {
    ++g.offsets[a + 1];
    ++g.offsets[b + 1];
  }
  for (std::size_t v = 0; v < pts.size(); ++v) g.offsets[v + 1] += g.offsets[v];
  g.neighbors.resize(g.offsets[pts.size()]);
  std::vector<std::uint32_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& [a, b] : edges) {
    g.neighbors[cursor[a]++] = b;
    g.neighbors[cursor[b]++] = a;
  }
  for (std::size_t v = 0; v < pts.size(); ++v)
    std::sort(g.neighbors.data() + g.offsets[v], g.neighbors.data() + g.offsets[v + 1]);
  return SkeletonMetric(n, std::move(pts), std::move(g));
}

}  // namespace hexacarpet
