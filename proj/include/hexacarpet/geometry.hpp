#pragma once

// Exact geometric realization of the level-n approximations: repeated
// barycentric subdivision of a triangle, with the standard labeling that
// names each level-n triangle by a 6-letter word. All incidence tests are
// done in integer barycentric coordinates (numerators over the implicit
// denominator 6^level), so equality, collinearity and containment are exact;
// Cartesian coordinates are produced on demand as exact rationals.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hexacarpet/errors.hpp"
#include "hexacarpet/rational.hpp"
#include "hexacarpet/words.hpp"

namespace hexacarpet {

// Hard cap on subdivision depth. Level 7 holds 6^7 = 279936 triangles and is
// the deepest level any workflow here builds geometrically; the cap keeps
// barycentric numerators (at most 6^8 during child construction) far inside
// the exact-arithmetic range.
inline constexpr int kMaxGeometryLevel = 7;

// A point in integer barycentric coordinates relative to the root triangle.
// The three entries are numerators over an implicit denominator 6^level; they
// always sum to exactly 6^level.
using BaryPoint = std::array<std::int64_t, 3>;

// Cartesian point with exact rational coordinates.
using RatPoint = std::array<Rational, 2>;

// The root triangle's corners in Cartesian coordinates, in the order that
// barycentric coordinates refer to them.
using RootTriangle = std::array<RatPoint, 3>;

inline RootTriangle unit_root() {
  return RootTriangle{RatPoint{Rational(0), Rational(0)},
                      RatPoint{Rational(1), Rational(0)},
                      RatPoint{Rational(0), Rational(1)}};
}

namespace geo_detail {

using i128 = __int128;

inline i128 det3(const BaryPoint& a, const BaryPoint& b, const BaryPoint& c) {
  // Determinant of the homogeneous coordinate matrix; zero iff collinear.
  return i128(a[0]) * (i128(b[1]) * c[2] - i128(b[2]) * c[1]) -
         i128(a[1]) * (i128(b[0]) * c[2] - i128(b[2]) * c[0]) +
         i128(a[2]) * (i128(b[0]) * c[1] - i128(b[1]) * c[0]);
}

// All three points must share one denominator (same level).
inline bool collinear(const BaryPoint& a, const BaryPoint& b, const BaryPoint& c) {
  return det3(a, b, c) == 0;
}

inline bool on_segment(const BaryPoint& p, const BaryPoint& a, const BaryPoint& b) {
  if (!collinear(p, a, b)) return false;
  for (int i = 0; i < 3; ++i) {
    if (p[i] < std::min(a[i], b[i]) || p[i] > std::max(a[i], b[i])) return false;
  }
  return true;
}

inline bool segment_subset(const BaryPoint& p, const BaryPoint& q, const BaryPoint& a,
                           const BaryPoint& b) {
  return on_segment(p, a, b) && on_segment(q, a, b);
}

inline BaryPoint scaled(const BaryPoint& p, std::int64_t f) {
  return BaryPoint{p[0] * f, p[1] * f, p[2] * f};
}

using TriVerts = std::array<BaryPoint, 3>;

inline TriVerts scaled(const TriVerts& t, std::int64_t f) {
  return TriVerts{scaled(t[0], f), scaled(t[1], f), scaled(t[2], f)};
}

// The six barycentric children of [P,Q,R], in fan order around the
// barycenter: [P,m_PQ,c], [m_PQ,Q,c], [Q,m_QR,c], [m_QR,R,c], [R,m_RP,c],
// [m_RP,P,c]. Inputs at denominator 6^m, outputs at 6^(m+1).
inline std::array<TriVerts, 6> fan_children(const TriVerts& t) {
  auto mid = [](const BaryPoint& a, const BaryPoint& b) {
    return BaryPoint{3 * (a[0] + b[0]), 3 * (a[1] + b[1]), 3 * (a[2] + b[2])};
  };
  const BaryPoint p6 = scaled(t[0], 6), q6 = scaled(t[1], 6), r6 = scaled(t[2], 6);
  const BaryPoint mpq = mid(t[0], t[1]), mqr = mid(t[1], t[2]), mrp = mid(t[2], t[0]);
  const BaryPoint c = {2 * (t[0][0] + t[1][0] + t[2][0]), 2 * (t[0][1] + t[1][1] + t[2][1]),
                       2 * (t[0][2] + t[1][2] + t[2][2])};
  return {TriVerts{p6, mpq, c}, TriVerts{mpq, q6, c}, TriVerts{q6, mqr, c},
          TriVerts{mqr, r6, c}, TriVerts{r6, mrp, c}, TriVerts{mrp, p6, c}};
}

// A triangle is "special" with respect to an ancestor triangle when one of
// its sides lies inside a side of the ancestor and one of its vertices is a
// vertex of the ancestor. Both triangles must be expressed at the same
// denominator.
inline bool is_special_wrt(const TriVerts& tri, const TriVerts& anc) {
  bool vertex_hit = false;
  for (const auto& v : tri) {
    for (const auto& a : anc) {
      if (v == a) {
        vertex_hit = true;
        break;
      }
    }
    if (vertex_hit) break;
  }
  if (!vertex_hit) return false;
  for (int s = 0; s < 3; ++s) {
    const BaryPoint& p = tri[s];
    const BaryPoint& q = tri[(s + 1) % 3];
    for (int a = 0; a < 3; ++a) {
      if (segment_subset(p, q, anc[a], anc[(a + 1) % 3])) return true;
    }
  }
  return false;
}

}  // namespace geo_detail

// How two same-level triangles that share a full side relate to each other.
// Siblings (same parent) meet either along a segment from a parent vertex to
// the parent barycenter, or along a segment from a parent side midpoint to
// the parent barycenter; triangles with different parents meet across the
// parents' common side.
enum class AdjacencyKind { kVertexAdjacent, kSideAdjacent, kCrossParent };

inline const char* to_string(AdjacencyKind k) {
  switch (k) {
    case AdjacencyKind::kVertexAdjacent: return "vertex-adjacent";
    case AdjacencyKind::kSideAdjacent: return "side-adjacent";
    case AdjacencyKind::kCrossParent: return "cross-parent";
  }
  return "?";
}

// One triangle of a subdivision level, as a value type. `label` holds the
// base-6 digits of the triangle's address (empty for the root triangle);
// `parent_label` is one digit shorter. Vertices are carried both as exact
// Cartesian rationals and as integer barycentric numerators (denominator
// 6^level). `parent_bary` holds the parent triangle's vertices at denominator
// 6^(level-1); for the root it repeats the root's own vertices.
struct Simplex {
  std::vector<std::uint8_t> label;
  std::vector<std::uint8_t> parent_label;
  std::array<RatPoint, 3> vertices;
  std::array<BaryPoint, 3> bary;
  std::array<BaryPoint, 3> parent_bary;
  int level = 0;

  Word word() const { return Word{label}; }
  std::uint64_t index() const {
    std::uint64_t v = 0;
    for (std::uint8_t d : label) v = v * 6 + d;
    return v;
  }
};

class SubdivisionLevel;
using LevelPtr = std::shared_ptr<const SubdivisionLevel>;

// All 6^n triangles of subdivision depth n, indexed by the base-6 value of
// their label (first letter most significant). Keeps a pointer to the level
// it was derived from, so ancestor geometry stays reachable.
class SubdivisionLevel {
 public:
  int level() const { return n_; }
  std::uint64_t size() const { return verts_.size(); }
  const RootTriangle& root() const { return root_; }
  const LevelPtr& parent_level() const { return parent_; }

  const std::array<BaryPoint, 3>& tri(std::uint64_t index) const { return verts_[index]; }

  Simplex simplex(std::uint64_t index) const {
    if (index >= verts_.size()) throw std::out_of_range("simplex index out of range");
    Simplex s;
    s.level = n_;
    s.label = digits_of(index, n_);
    s.parent_label = n_ == 0 ? std::vector<std::uint8_t>{} : digits_of(index / 6, n_ - 1);
    s.bary = verts_[index];
    s.parent_bary = parent_ ? parent_->verts_[index / 6] : verts_[index];
    for (int i = 0; i < 3; ++i) s.vertices[i] = to_cartesian(s.bary[i]);
    return s;
  }

  Simplex simplex(const Word& label) const { return simplex(label.value()); }

  // Maps integer barycentric numerators at this level's denominator to exact
  // Cartesian coordinates.
  RatPoint to_cartesian(const BaryPoint& p) const {
    const Rational den(static_cast<std::int64_t>(pow6(n_)));
    RatPoint out{Rational(0), Rational(0)};
    for (int j = 0; j < 3; ++j) {
      const Rational w = Rational(p[j]) / den;
      out[0] = out[0] + w * root_[j][0];
      out[1] = out[1] + w * root_[j][1];
    }
    return out;
  }

  static std::vector<std::uint8_t> digits_of(std::uint64_t value, int level) {
    std::vector<std::uint8_t> d(static_cast<std::size_t>(level));
    for (int i = level - 1; i >= 0; --i) {
      d[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value % 6);
      value /= 6;
    }
    return d;
  }

 private:
  friend LevelPtr make_root(const RootTriangle&);
  friend LevelPtr label_level(const LevelPtr&);

  int n_ = 0;
  RootTriangle root_;
  LevelPtr parent_;
  std::vector<std::array<BaryPoint, 3>> verts_;
};

inline LevelPtr make_root(const RootTriangle& corners) {
  // Reject degenerate roots: the exact signed area must be nonzero.
  const Rational ax = corners[1][0] - corners[0][0], ay = corners[1][1] - corners[0][1];
  const Rational bx = corners[2][0] - corners[0][0], by = corners[2][1] - corners[0][1];
  if (ax * by - ay * bx == Rational(0))
    throw std::invalid_argument("root triangle is degenerate");
  auto lvl = std::make_shared<SubdivisionLevel>();
  lvl->n_ = 0;
  lvl->root_ = corners;
  lvl->verts_ = {{BaryPoint{1, 0, 0}, BaryPoint{0, 1, 0}, BaryPoint{0, 0, 1}}};
  return lvl;
}

// Subdivides one triangle into its six fan-order children. The returned
// labels extend the parent's label by the fan position (0..5 around the
// barycenter); they are provisional addresses, not the standard labels —
// label_level assigns those for a whole level at once.
inline std::array<Simplex, 6> subdivide(const Simplex& t) {
  {
    const Rational ax = t.vertices[1][0] - t.vertices[0][0];
    const Rational ay = t.vertices[1][1] - t.vertices[0][1];
    const Rational bx = t.vertices[2][0] - t.vertices[0][0];
    const Rational by = t.vertices[2][1] - t.vertices[0][1];
    if (ax * by - ay * bx == Rational(0))
      throw std::invalid_argument("subdivide: degenerate triangle");
  }
  const auto fans = geo_detail::fan_children(t.bary);
  std::array<Simplex, 6> out;
  for (int q = 0; q < 6; ++q) {
    Simplex& c = out[static_cast<std::size_t>(q)];
    c.level = t.level + 1;
    c.label = t.label;
    c.label.push_back(static_cast<std::uint8_t>(q));
    c.parent_label = t.label;
    c.bary = fans[static_cast<std::size_t>(q)];
    c.parent_bary = t.bary;
    const Rational half(1, 2), third(1, 3);
    const RatPoint &P = t.vertices[0], &Q = t.vertices[1], &R = t.vertices[2];
    auto mid = [&](const RatPoint& a, const RatPoint& b) {
      return RatPoint{(a[0] + b[0]) * half, (a[1] + b[1]) * half};
    };
    const RatPoint mpq = mid(P, Q), mqr = mid(Q, R), mrp = mid(R, P);
    const RatPoint bc{(P[0] + Q[0] + R[0]) * third, (P[1] + Q[1] + R[1]) * third};
    static constexpr int kFanSlots[6][2] = {{0, 3}, {3, 1}, {1, 4}, {4, 2}, {2, 5}, {5, 0}};
    const RatPoint pts[6] = {P, Q, R, mpq, mqr, mrp};
    c.vertices[0] = pts[kFanSlots[q][0]];
    c.vertices[1] = pts[kFanSlots[q][1]];
    c.vertices[2] = bc;
  }
  return out;
}

// Builds level n+1 from level n and assigns the standard labels: within each
// parent, the child that is special with respect to the grandparent receives
// final digit 0, and the remaining digits 1..5 proceed cyclically so that
// consecutive labels alternate vertex-adjacency ({0,1},{2,3},{4,5}) with
// side-adjacency ({1,2},{3,4},{5,0}). At the first level, where there is no
// grandparent, digit 0 goes to the child containing the root's first corner
// on its side toward the second corner.
inline LevelPtr label_level(const LevelPtr& prev) {
  if (!prev) throw std::invalid_argument("label_level: null level");
  if (prev->level() >= kMaxGeometryLevel)
    throw ResourceLimitError("subdivision level cap " + std::to_string(kMaxGeometryLevel) +
                             " exceeded");
  if (prev->size() != pow6(prev->level()))
    throw std::invalid_argument("label_level: level has wrong triangle count");
  if (prev->level() >= 1 && !prev->parent_level())
    throw std::invalid_argument("label_level: level is missing its parent linkage");

  auto next = std::make_shared<SubdivisionLevel>();
  next->n_ = prev->level() + 1;
  next->root_ = prev->root();
  next->parent_ = prev;
  next->verts_.resize(prev->size() * 6);

  for (std::uint64_t p = 0; p < prev->size(); ++p) {
    const auto fans = geo_detail::fan_children(prev->tri(p));
    int special_fan = -1;
    if (prev->level() == 0) {
      // Seed: fan 0 is [corner0, midpoint(corner0,corner1), barycenter].
      special_fan = 0;
    } else {
      const auto anc = geo_detail::scaled(prev->parent_level()->tri(p / 6), 36);
      for (int q = 0; q < 6; ++q) {
        if (geo_detail::is_special_wrt(fans[static_cast<std::size_t>(q)], anc)) {
          if (special_fan >= 0)
            throw std::logic_error("label_level: two special children under one parent");
          special_fan = q;
        }
      }
      if (special_fan < 0)
        throw std::logic_error("label_level: no special child under a parent");
    }
    // Fans with even index start at a parent vertex, odd ones at a midpoint;
    // the direction below is the unique one realizing the required
    // vertex/side adjacency alternation from the special child.
    const int dir = (special_fan % 2 == 0) ? -1 : 1;
    for (int d = 0; d < 6; ++d) {
      const int q = ((special_fan + dir * d) % 6 + 6) % 6;
      next->verts_[p * 6 + static_cast<std::uint64_t>(d)] = fans[static_cast<std::size_t>(q)];
    }
  }
  return next;
}

// Levels 0..n of the subdivision of `corners`, with standard labels.
inline std::vector<LevelPtr> build_subdivision(int n, const RootTriangle& corners = unit_root()) {
  if (n < 0) throw std::invalid_argument("build_subdivision: negative level");
  std::vector<LevelPtr> chain;
  chain.push_back(make_root(corners));
  for (int i = 0; i < n; ++i) chain.push_back(label_level(chain.back()));
  return chain;
}

// Classifies how two triangles of one level meet. Returns nullopt when they
// do not share a full side (sharing only a point does not count). Throws on
// level mismatch and on geometry inconsistent with a conforming subdivision.
inline std::optional<AdjacencyKind> classify_adjacency(const Simplex& s, const Simplex& t) {
  if (s.level != t.level)
    throw std::invalid_argument("classify_adjacency: triangles of different levels");
  // Find the vertices the two triangles have in common (exact equality).
  std::vector<BaryPoint> common;
  for (const auto& a : s.bary)
    for (const auto& b : t.bary)
      if (a == b) common.push_back(a);
  if (common.size() < 2) return std::nullopt;
  if (common.size() > 2 || s.label == t.label)
    throw std::invalid_argument("classify_adjacency: triangles coincide");

  if (s.parent_label != t.parent_label) return AdjacencyKind::kCrossParent;

  // Siblings: the shared side must run from the parent barycenter to either
  // a parent vertex or a parent side midpoint.
  const auto& pv = s.parent_bary;  // denominator 6^(level-1)
  const BaryPoint bary_c = {2 * (pv[0][0] + pv[1][0] + pv[2][0]),
                            2 * (pv[0][1] + pv[1][1] + pv[2][1]),
                            2 * (pv[0][2] + pv[1][2] + pv[2][2])};
  BaryPoint other{};
  bool saw_center = false;
  for (const auto& p : common) {
    if (p == bary_c)
      saw_center = true;
    else
      other = p;
  }
  if (!saw_center)
    throw std::logic_error("classify_adjacency: sibling side misses parent barycenter");
  for (const auto& v : pv)
    if (geo_detail::scaled(v, 6) == other) return AdjacencyKind::kVertexAdjacent;
  for (int i = 0; i < 3; ++i) {
    const auto& a = pv[static_cast<std::size_t>(i)];
    const auto& b = pv[static_cast<std::size_t>((i + 1) % 3)];
    const BaryPoint mid = {3 * (a[0] + b[0]), 3 * (a[1] + b[1]), 3 * (a[2] + b[2])};
    if (mid == other) return AdjacencyKind::kSideAdjacent;
  }
  throw std::logic_error("classify_adjacency: sibling side endpoint is neither parent vertex nor midpoint");
}

// Boundary census of one level: which triangles meet the root boundary in a
// full side (`side_labels`), which meet it in exactly one point
// (`point_labels`), and which triangles are special with respect to each
// ancestor depth (`special_wrt_ancestor[d-1]` is indexed by triangle and
// covers the ancestor d levels up).
struct BoundaryReport {
  std::vector<std::uint64_t> side_labels;
  std::vector<std::uint64_t> point_labels;
  std::vector<std::vector<bool>> special_wrt_ancestor;
};

inline BoundaryReport boundary_and_special(const SubdivisionLevel& level, int max_depth = -1) {
  const int n = level.level();
  if (max_depth < 0 || max_depth > n) max_depth = n;
  BoundaryReport rep;
  rep.special_wrt_ancestor.assign(static_cast<std::size_t>(max_depth),
                                  std::vector<bool>(level.size(), false));

  // Walk the lineage chain once so ancestor geometry is addressable by depth.
  std::vector<const SubdivisionLevel*> chain(static_cast<std::size_t>(n) + 1, nullptr);
  chain[static_cast<std::size_t>(n)] = &level;
  {
    const SubdivisionLevel* cur = &level;
    for (int m = n; m > 0; --m) {
      if (!cur->parent_level()) {
        if (n - m + 1 <= max_depth)
          throw std::invalid_argument("boundary_and_special: lineage chain too short");
        break;
      }
      cur = cur->parent_level().get();
      chain[static_cast<std::size_t>(m - 1)] = cur;
    }
  }

  for (std::uint64_t idx = 0; idx < level.size(); ++idx) {
    const auto& tri = level.tri(idx);
    // A triangle side lies on the root boundary iff both endpoints have the
    // same barycentric coordinate equal to zero.
    bool side_contact = false;
    for (int c = 0; c < 3 && !side_contact; ++c) {
      int zeros = 0;
      for (const auto& v : tri) zeros += (v[static_cast<std::size_t>(c)] == 0);
      if (zeros >= 2) side_contact = true;
    }
    if (side_contact) {
      rep.side_labels.push_back(idx);
    } else {
      int touching = 0;
      for (const auto& v : tri) touching += (v[0] == 0 || v[1] == 0 || v[2] == 0);
      if (touching > 1)
        throw std::logic_error("boundary_and_special: isolated multi-point boundary contact");
      if (touching == 1) rep.point_labels.push_back(idx);
    }
  }

  // Special flags, one ancestor depth at a time.
  for (int d = 1; d <= max_depth; ++d) {
    const SubdivisionLevel* anc_level = chain[static_cast<std::size_t>(n - d)];
    const auto scale = static_cast<std::int64_t>(pow6(d));
    std::uint64_t anc_idx = 0, block = pow6(d);
    std::vector<bool>& flags = rep.special_wrt_ancestor[static_cast<std::size_t>(d - 1)];
    for (std::uint64_t idx = 0; idx < level.size(); ++idx) {
      if (idx / block != anc_idx) anc_idx = idx / block;
      const auto anc = geo_detail::scaled(anc_level->tri(anc_idx), scale);
      flags[idx] = geo_detail::is_special_wrt(level.tri(idx), anc);
    }
  }
  return rep;
}

// All side-sharing pairs of one level, as (smaller index, larger index) label
// pairs in sorted order. Verifies conformity on the way: every triangle side
// is shared by exactly two triangles or lies on the root boundary.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> geometric_edges(
    const SubdivisionLevel& level) {
  struct SideRec {
    std::array<std::int64_t, 6> key;
    std::uint64_t tri;
  };
  std::vector<SideRec> sides;
  sides.reserve(level.size() * 3);
  for (std::uint64_t idx = 0; idx < level.size(); ++idx) {
    const auto& t = level.tri(idx);
    for (int s = 0; s < 3; ++s) {
      const BaryPoint& a = t[static_cast<std::size_t>(s)];
      const BaryPoint& b = t[static_cast<std::size_t>((s + 1) % 3)];
      const BaryPoint &lo = std::min(a, b), &hi = std::max(a, b);
      sides.push_back({{lo[0], lo[1], lo[2], hi[0], hi[1], hi[2]}, idx});
    }
  }
  std::sort(sides.begin(), sides.end(),
            [](const SideRec& x, const SideRec& y) { return x.key < y.key; });
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (std::size_t i = 0; i < sides.size();) {
    std::size_t j = i;
    while (j < sides.size() && sides[j].key == sides[i].key) ++j;
    if (j - i == 2) {
      auto [u, v] = std::minmax(sides[i].tri, sides[i + 1].tri);
      edges.emplace_back(u, v);
    } else if (j - i == 1) {
      // Unmatched sides must lie on the root boundary.
      const auto& k = sides[i].key;
      bool on_boundary = false;
      for (int c = 0; c < 3; ++c)
        if (k[static_cast<std::size_t>(c)] == 0 && k[static_cast<std::size_t>(c + 3)] == 0)
          on_boundary = true;
      if (!on_boundary)
        throw std::logic_error("geometric_edges: interior side with only one triangle");
    } else {
      throw std::logic_error("geometric_edges: side shared by more than two triangles");
    }
    i = j;
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

// Labels of the triangles that have the root barycenter as a vertex (the
// innermost ring around the central hole). Requires level >= 1.
inline std::vector<std::uint64_t> inner_triangles(const SubdivisionLevel& level) {
  if (level.level() < 1)
    throw std::invalid_argument("inner_triangles: level must be at least 1");
  const auto w = 2 * static_cast<std::int64_t>(pow6(level.level() - 1));
  const BaryPoint center{w, w, w};
  std::vector<std::uint64_t> out;
  for (std::uint64_t idx = 0; idx < level.size(); ++idx) {
    const auto& t = level.tri(idx);
    if (t[0] == center || t[1] == center || t[2] == center) out.push_back(idx);
  }
  return out;
}

}  // namespace hexacarpet
