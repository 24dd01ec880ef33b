#pragma once

// The level-n approximation graphs as compact CSR adjacency structures, built
// independently from the word rules and from the geometric subdivision, plus
// the instance-level isomorphism check between the two, per-level censuses,
// the central hole cycle, and the six leading-letter symmetries.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexacarpet/errors.hpp"
#include "hexacarpet/geometry.hpp"
#include "hexacarpet/words.hpp"

namespace hexacarpet {

// Undirected graph on vertices 0..V-1 in compressed sparse rows; every
// adjacency row is sorted. Vertex ids are the base-6 word indices.
struct LevelGraph {
  int n = 0;
  std::vector<std::uint32_t> offsets;    // V+1 entries
  std::vector<std::uint32_t> neighbors;  // 2E entries

  std::uint64_t num_vertices() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::uint64_t num_edges() const { return neighbors.size() / 2; }

  const std::uint32_t* row_begin(std::uint32_t v) const { return neighbors.data() + offsets[v]; }
  const std::uint32_t* row_end(std::uint32_t v) const { return neighbors.data() + offsets[v + 1]; }
  int degree(std::uint32_t v) const { return static_cast<int>(offsets[v + 1] - offsets[v]); }

  bool has_edge(std::uint32_t u, std::uint32_t v) const {
    return std::binary_search(row_begin(u), row_end(u), v);
  }
};

namespace graph_detail {

// Digit odometer: iterates the base-6 expansions of 0..6^n-1 in order.
struct DigitCounter {
  std::array<std::uint8_t, 16> d{};
  int n;
  explicit DigitCounter(int level) : n(level) {}
  void advance() {
    for (int i = n - 1; i >= 0; --i) {
      if (++d[static_cast<std::size_t>(i)] < 6) break;
      d[static_cast<std::size_t>(i)] = 0;
    }
  }
  // 0-based index of the last digit outside {0,5}, or -1 when the word is in
  // vertex class 1.
  int class_pos() const {
    for (int i = n - 1; i >= 1; --i) {
      const std::uint8_t v = d[static_cast<std::size_t>(i)];
      if (v != 0 && v != 5) return i;
    }
    return -1;
  }
};

}  // namespace graph_detail

// Builds the level-n graph directly from the word rules: two neighbors by
// changing the last letter by +-1 mod 6, and for vertices outside class 1 the
// cross-cell partner that flips the letter before the class position.
inline LevelGraph build_word_graph(int n) {
  if (n < 1 || n > kMaxWordLevel)
    throw ResourceLimitError("word graph level must be in 1.." + std::to_string(kMaxWordLevel));
  const std::uint64_t V = pow6(n);
  LevelGraph g;
  g.n = n;
  g.offsets.assign(V + 1, 0);

  {
    graph_detail::DigitCounter c(n);
    for (std::uint64_t v = 0; v < V; ++v, c.advance())
      g.offsets[v + 1] = (c.class_pos() >= 1) ? 3 : 2;
  }
  for (std::uint64_t v = 0; v < V; ++v) g.offsets[v + 1] += g.offsets[v];
  g.neighbors.resize(g.offsets[V]);

  std::array<std::uint64_t, 16> place{};
  for (int i = 0; i < n; ++i) place[static_cast<std::size_t>(i)] = pow6(n - 1 - i);

  graph_detail::DigitCounter c(n);
  for (std::uint64_t v = 0; v < V; ++v, c.advance()) {
    std::uint32_t* out = g.neighbors.data() + g.offsets[v];
    const std::uint8_t last = c.d[static_cast<std::size_t>(n - 1)];
    out[0] = static_cast<std::uint32_t>(v - last + (last + 1) % 6);
    out[1] = static_cast<std::uint32_t>(v - last + (last + 5) % 6);
    int len = 2;
    const int ki = c.class_pos();
    if (ki >= 1) {
      const std::uint8_t a = c.d[static_cast<std::size_t>(ki - 1)];
      const std::uint8_t alpha = c.d[static_cast<std::size_t>(ki)];
      const std::uint8_t ap = detail::partner_digit(a, alpha);
      const std::int64_t delta = (std::int64_t(ap) - a) * std::int64_t(place[static_cast<std::size_t>(ki - 1)]);
      out[2] = static_cast<std::uint32_t>(std::int64_t(v) + delta);
      len = 3;
    }
    std::sort(out, out + len);
  }
  return g;
}

// Builds the same-shaped graph from the exact geometric subdivision: vertices
// are triangle labels, edges are shared full sides.
inline LevelGraph build_geometry_graph(const SubdivisionLevel& level) {
  if (level.level() < 1)
    throw std::invalid_argument("build_geometry_graph: level must be at least 1");
  const auto edges = geometric_edges(level);
  const std::uint64_t V = level.size();
  LevelGraph g;
  g.n = level.level();
  g.offsets.assign(V + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets[u + 1];
    ++g.offsets[v + 1];
  }
  for (std::uint64_t v = 0; v < V; ++v) g.offsets[v + 1] += g.offsets[v];
  g.neighbors.resize(g.offsets[V]);
  std::vector<std::uint32_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    g.neighbors[cursor[u]++] = static_cast<std::uint32_t>(v);
    g.neighbors[cursor[v]++] = static_cast<std::uint32_t>(u);
  }
  for (std::uint64_t v = 0; v < V; ++v)
    std::sort(g.neighbors.data() + g.offsets[v], g.neighbors.data() + g.offsets[v + 1]);
  return g;
}

// Result of comparing two graphs vertex by vertex under the identity map.
struct IsomorphismReport {
  bool isomorphic = false;
  std::uint64_t mismatch_vertex = 0;  // meaningful only when !isomorphic
  std::vector<std::uint64_t> lhs_row;
  std::vector<std::uint64_t> rhs_row;
  std::string message;
};

// Checks that the identity on labels is a graph isomorphism: both graphs must
// have the same vertex count and identical sorted adjacency rows. On failure
// the report pins down the first vertex whose neighborhoods differ.
inline IsomorphismReport verify_isomorphism(const LevelGraph& lhs, const LevelGraph& rhs) {
  IsomorphismReport rep;
  if (lhs.num_vertices() != rhs.num_vertices()) {
    rep.message = "vertex counts differ: " + std::to_string(lhs.num_vertices()) + " vs " +
                  std::to_string(rhs.num_vertices());
    return rep;
  }
  for (std::uint64_t v = 0; v < lhs.num_vertices(); ++v) {
    const auto u = static_cast<std::uint32_t>(v);
    const bool same = lhs.degree(u) == rhs.degree(u) &&
                      std::equal(lhs.row_begin(u), lhs.row_end(u), rhs.row_begin(u));
    if (!same) {
      rep.mismatch_vertex = v;
      rep.lhs_row.assign(lhs.row_begin(u), lhs.row_end(u));
      rep.rhs_row.assign(rhs.row_begin(u), rhs.row_end(u));
      rep.message = "neighborhoods differ at vertex " + std::to_string(v) +
                    (lhs.n >= 1 ? " (word " + Word::from_index(v, lhs.n).str() + ")" : "");
      return rep;
    }
  }
  rep.isomorphic = true;
  rep.message = "identity map is an isomorphism on " + std::to_string(lhs.num_vertices()) +
                " vertices / " + std::to_string(lhs.num_edges()) + " edges";
  return rep;
}

// How a triangle's word meets the root boundary: along a full side, in a
// single point (entered from either end of the inherited boundary side), or
// not at all. Evaluated by a digit automaton that tracks the contact kind and
// the orientation parity of the current triangle.
enum class BoundaryContact : std::uint8_t { kSide, kPointLow, kPointHigh, kNone };

inline BoundaryContact boundary_contact(const std::uint8_t* digits, int n) {
  // Level 1: every child has a full side on the root boundary; orientation
  // parity equals the leading letter's parity.
  BoundaryContact c = BoundaryContact::kSide;
  int odd = digits[0] % 2;
  for (int i = 1; i < n; ++i) {
    const std::uint8_t l = digits[static_cast<std::size_t>(i)];
    switch (c) {
      case BoundaryContact::kSide:
        if (l == 0 || l == 5)
          c = BoundaryContact::kSide;
        else if (l == (odd ? 1 : 4))
          c = BoundaryContact::kPointLow;
        else if (l == (odd ? 4 : 1))
          c = BoundaryContact::kPointHigh;
        else
          c = BoundaryContact::kNone;
        break;
      case BoundaryContact::kPointLow:
        if (l == (odd ? 5 : 0))
          c = BoundaryContact::kPointLow;
        else if (l == (odd ? 4 : 1))
          c = BoundaryContact::kPointHigh;
        else
          c = BoundaryContact::kNone;
        break;
      case BoundaryContact::kPointHigh:
        if (l == (odd ? 0 : 5))
          c = BoundaryContact::kPointHigh;
        else if (l == (odd ? 1 : 4))
          c = BoundaryContact::kPointLow;
        else
          c = BoundaryContact::kNone;
        break;
      case BoundaryContact::kNone:
        return BoundaryContact::kNone;
    }
    odd = odd ? (l + 1) % 2 : l % 2;
  }
  return c;
}

inline BoundaryContact boundary_contact(const Word& w) {
  return boundary_contact(w.digits.data(), w.level());
}

// Whether a word names a triangle of the innermost ring around the central
// hole: second letter in {2,3} and all later letters in {0,1} (at level 1,
// every triangle touches the center).
inline bool is_inner_ring(const std::uint8_t* digits, int n) {
  if (n == 1) return true;
  if (digits[1] != 2 && digits[1] != 3) return false;
  for (int i = 2; i < n; ++i)
    if (digits[static_cast<std::size_t>(i)] > 1) return false;
  return true;
}

inline bool is_inner_ring(const Word& w) { return is_inner_ring(w.digits.data(), w.level()); }

// Exact per-level counts, all obtained by direct enumeration over the 6^n
// words (no closed forms).
struct LevelCensus {
  int n = 0;
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::uint64_t degree2 = 0;
  std::uint64_t degree3 = 0;
  std::vector<std::uint64_t> class_sizes;   // class_sizes[k-1] = |W_k|
  std::vector<std::uint64_t> family_sizes;  // family_sizes[k-1] = |F_k|
  std::uint64_t boundary_side = 0;          // triangles meeting the boundary in a side
  std::uint64_t boundary_point = 0;         // ... in exactly one point
  std::uint64_t inner_ring = 0;             // triangles at the central hole
};

inline LevelCensus census(int n) {
  if (n < 1 || n > kMaxWordLevel)
    throw ResourceLimitError("census level must be in 1.." + std::to_string(kMaxWordLevel));
  LevelCensus out;
  out.n = n;
  out.vertices = pow6(n);
  out.class_sizes.assign(static_cast<std::size_t>(n), 0);
  out.family_sizes.assign(static_cast<std::size_t>(n), 0);

  graph_detail::DigitCounter c(n);
  for (std::uint64_t v = 0; v < out.vertices; ++v, c.advance()) {
    // Count each last-letter edge once, at its smaller endpoint.
    const std::uint8_t last = c.d[static_cast<std::size_t>(n - 1)];
    out.family_sizes[0] += ((last + 1) % 6 > last) + ((last + 5) % 6 > last);
    const int ki = c.class_pos();
    if (ki < 1) {
      ++out.class_sizes[0];
      ++out.degree2;
    } else {
      ++out.class_sizes[static_cast<std::size_t>(ki)];
      ++out.degree3;
      // Count each cross-cell edge at its smaller endpoint; the partner flips
      // the digit before the class position.
      const std::uint8_t a = c.d[static_cast<std::size_t>(ki - 1)];
      if (detail::partner_digit(a, c.d[static_cast<std::size_t>(ki)]) > a)
        ++out.family_sizes[static_cast<std::size_t>(ki)];
    }
    switch (boundary_contact(c.d.data(), n)) {
      case BoundaryContact::kSide: ++out.boundary_side; break;
      case BoundaryContact::kPointLow:
      case BoundaryContact::kPointHigh: ++out.boundary_point; break;
      case BoundaryContact::kNone: break;
    }
    out.inner_ring += is_inner_ring(c.d.data(), n) ? 1 : 0;
  }
  out.edges = std::accumulate(out.family_sizes.begin(), out.family_sizes.end(), std::uint64_t{0});
  return out;
}

// The triangles around the central hole in cyclic order, starting from the
// smallest label toward its smaller ring neighbor. Verifies on the way that
// the ring induces a single cycle in the level graph.
inline std::vector<std::uint64_t> hole_cycle(int n) {
  if (n < 1 || n > kMaxWordLevel)
    throw ResourceLimitError("hole cycle level must be in 1.." + std::to_string(kMaxWordLevel));
  std::vector<std::uint64_t> ring;
  for (std::uint64_t v = 0; v < pow6(n); ++v) {
    const Word w = Word::from_index(v, n);
    if (is_inner_ring(w)) ring.push_back(v);
  }
  std::vector<std::uint64_t> cycle;
  cycle.reserve(ring.size());
  auto ring_neighbors = [&](std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (const Word& w : word_neighbors(Word::from_index(v, n))) {
      if (is_inner_ring(w)) out.push_back(w.value());
    }
    return out;
  };
  const std::uint64_t start = ring.front();
  std::uint64_t prev = start;
  {
    auto nb = ring_neighbors(start);
    if (nb.size() != 2) throw std::logic_error("hole_cycle: ring vertex without two ring neighbors");
    cycle.push_back(start);
    cycle.push_back(std::min(nb[0], nb[1]));
  }
  while (cycle.back() != start) {
    auto nb = ring_neighbors(cycle.back());
    if (nb.size() != 2) throw std::logic_error("hole_cycle: ring vertex without two ring neighbors");
    const std::uint64_t next = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cycle.back();
    cycle.push_back(next);
  }
  cycle.pop_back();  // drop the repeated start
  if (cycle.size() != ring.size())
    throw std::logic_error("hole_cycle: ring is not a single cycle");
  return cycle;
}

// The six relabelings of the leading letter that preserve the graph:
// a |-> a + s for even s, and a |-> s - a for odd s, acting on the first
// letter only.
struct FirstLetterMap {
  std::uint8_t shift = 0;
  bool negate = false;

  std::uint8_t apply_letter(std::uint8_t a) const {
    const int x = negate ? shift - a : shift + a;
    return static_cast<std::uint8_t>(((x % 6) + 6) % 6);
  }
};

inline std::array<FirstLetterMap, 6> first_letter_maps() {
  return {FirstLetterMap{0, false}, FirstLetterMap{2, false}, FirstLetterMap{4, false},
          FirstLetterMap{1, true},  FirstLetterMap{3, true},  FirstLetterMap{5, true}};
}

inline std::uint64_t apply_first_letter_map(const FirstLetterMap& m, std::uint64_t v, int n) {
  const std::uint64_t block = pow6(n - 1);
  const auto top = static_cast<std::uint8_t>(v / block);
  return std::uint64_t(m.apply_letter(top)) * block + v % block;
}

// Checks edge preservation of a leading-letter map over the whole graph.
inline bool preserves_adjacency(const LevelGraph& g, const FirstLetterMap& m) {
  const std::uint64_t V = g.num_vertices();
  for (std::uint64_t v = 0; v < V; ++v) {
    const auto mv = static_cast<std::uint32_t>(apply_first_letter_map(m, v, g.n));
    for (const std::uint32_t* p = g.row_begin(static_cast<std::uint32_t>(v)); p != g.row_end(static_cast<std::uint32_t>(v)); ++p) {
      const auto mw = static_cast<std::uint32_t>(apply_first_letter_map(m, *p, g.n));
      if (!g.has_edge(mv, mw)) return false;
    }
  }
  return true;
}

}  // namespace hexacarpet
