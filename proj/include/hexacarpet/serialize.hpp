#pragma once

// File formats: a checksummed plain-text edge-list for level graphs, and CSV
// writers for every table the tooling emits (distance tables, eigenvalue
// tables, ratio grids, counting functions, eigenmap coordinates, walk
// statistics). All writers are deterministic: the same data produces the
// same bytes.
//
// Edge-list layout:
//   {"level":L,"vertices":V,"edges":E}     one-line JSON header
//   u v k                                  E lines, base-6 words u < v,
//                                          k = edge family tag
//   # fnv1a64 <16 hex digits>              checksum of the E edge lines
//
// Edges appear sorted by (u, v); the checksum covers every edge-line byte
// including newlines, so any flipped digit fails the load.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hexacarpet/distances.hpp"
#include "hexacarpet/errors.hpp"
#include "hexacarpet/graph.hpp"
#include "hexacarpet/spectral.hpp"
#include "hexacarpet/walks.hpp"
#include "hexacarpet/words.hpp"

namespace hexacarpet {

namespace serialize_detail {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

inline std::uint64_t fnv1a64(const std::string& bytes, std::uint64_t state = kFnvOffset) {
  for (const char c : bytes) {
    state ^= static_cast<unsigned char>(c);
    state *= kFnvPrime;
  }
  return state;
}

inline std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Shortest round-trip decimal form of a double, stable across runs.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Pulls `"key":<digits>` out of the fixed-shape header line.
inline std::uint64_t header_field(const std::string& line, const std::string& key) {
  const std::string needle = "\"" + key + "\":";
  const auto pos = line.find(needle);
  if (pos == std::string::npos)
    throw std::invalid_argument("graph header missing field: " + key);
  std::size_t i = pos + needle.size();
  if (i >= line.size() || line[i] < '0' || line[i] > '9')
    throw std::invalid_argument("graph header field is not a number: " + key);
  std::uint64_t value = 0;
  while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
    value = value * 10 + static_cast<std::uint64_t>(line[i] - '0');
    ++i;
  }
  return value;
}

}  // namespace serialize_detail

// Writes the canonical edge-list form of a graph. Single pass: edge lines are
// streamed and hashed together, and the checksum lands in the footer.
inline void save_graph(std::ostream& out, const LevelGraph& g) {
  out << "{\"level\":" << g.n << ",\"vertices\":" << g.num_vertices()
      << ",\"edges\":" << g.num_edges() << "}\n";
  std::uint64_t hash = serialize_detail::kFnvOffset;
  std::string line;
  for (std::uint64_t v = 0; v < g.num_vertices(); ++v) {
    const Word u_word = Word::from_index(v, g.n);
    for (const std::uint32_t* it = g.row_begin(static_cast<std::uint32_t>(v));
         it != g.row_end(static_cast<std::uint32_t>(v)); ++it) {
      if (*it <= v) continue;  // each undirected edge once, smaller word first
      const Word v_word = Word::from_index(*it, g.n);
      line = u_word.str();
      line += ' ';
      line += v_word.str();
      line += ' ';
      line += std::to_string(edge_tag(u_word, v_word).k);
      line += '\n';
      hash = serialize_detail::fnv1a64(line, hash);
      out << line;
    }
  }
  out << "# fnv1a64 " << serialize_detail::hex16(hash) << "\n";
}

inline void save_graph_file(const std::string& path, const LevelGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_graph(out, g);
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Reads a graph back, verifying the checksum and the structural claims. A
// checksum mismatch wins over any parse problem in the edge lines, since a
// damaged file usually still tokenizes.
inline LevelGraph load_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty graph file");
  const auto level64 = serialize_detail::header_field(line, "level");
  const auto vertices = serialize_detail::header_field(line, "vertices");
  const auto edges = serialize_detail::header_field(line, "edges");
  if (level64 < 1 || level64 > static_cast<std::uint64_t>(kMaxWordLevel))
    throw std::invalid_argument("graph header level out of range");
  const int n = static_cast<int>(level64);
  std::uint64_t expect_vertices = 1;
  for (int i = 0; i < n; ++i) expect_vertices *= 6;
  if (vertices != expect_vertices)
    throw std::invalid_argument("graph header vertex count does not match the level");

  std::uint64_t hash = serialize_detail::kFnvOffset;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(edges);
  std::string deferred;  // first semantic problem, reported only if the checksum holds
  for (std::uint64_t e = 0; e < edges; ++e) {
    if (!std::getline(in, line)) throw ChecksumError("graph file truncated: missing edge lines");
    hash = serialize_detail::fnv1a64(line + "\n", hash);
    if (!deferred.empty()) continue;
    const auto s1 = line.find(' ');
    const auto s2 = line.find(' ', s1 == std::string::npos ? s1 : s1 + 1);
    if (s1 == std::string::npos || s2 == std::string::npos) {
      deferred = "malformed edge line: " + line;
      continue;
    }
    try {
      const Word u = Word::from_string(line.substr(0, s1));
      const Word v = Word::from_string(line.substr(s1 + 1, s2 - s1 - 1));
      const int k = std::stoi(line.substr(s2 + 1));
      if (u.level() != n || v.level() != n) throw std::invalid_argument("edge word level");
      if (!(u.value() < v.value())) throw std::invalid_argument("edge order");
      if (edge_tag(u, v).k != k) throw std::invalid_argument("edge tag");
      pairs.emplace_back(static_cast<std::uint32_t>(u.value()),
                         static_cast<std::uint32_t>(v.value()));
    } catch (const std::exception& ex) {
      deferred = std::string(ex.what()) + " in line: " + line;
    }
  }
  if (!std::getline(in, line)) throw ChecksumError("graph file truncated: missing checksum footer");
  const std::string prefix = "# fnv1a64 ";
  if (line.rfind(prefix, 0) != 0 || line.size() != prefix.size() + 16)
    throw ChecksumError("graph file has no checksum footer");
  if (line.substr(prefix.size()) != serialize_detail::hex16(hash))
    throw ChecksumError("graph file checksum mismatch: expected " + line.substr(prefix.size()) +
                        ", computed " + serialize_detail::hex16(hash));
  if (!deferred.empty()) throw std::invalid_argument(deferred);

  LevelGraph g;
  g.n = n;
  g.offsets.assign(vertices + 1, 0);
  for (const auto& [u, v] : pairs) {
    ++g.offsets[u + 1];
    ++g.offsets[v + 1];
  }
  for (std::uint64_t v = 0; v < vertices; ++v) g.offsets[v + 1] += g.offsets[v];
  g.neighbors.resize(2 * edges);
  std::vector<std::uint32_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& [u, v] : pairs) {
    g.neighbors[cursor[u]++] = v;
    g.neighbors[cursor[v]++] = u;
  }
  for (std::uint64_t v = 0; v < vertices; ++v) {
    std::sort(g.neighbors.begin() + g.offsets[v], g.neighbors.begin() + g.offsets[v + 1]);
    const auto deg = g.offsets[v + 1] - g.offsets[v];
    if (deg < 2 || deg > 3) throw std::invalid_argument("loaded graph has a bad degree");
  }
  return g;
}

inline LevelGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return load_graph(in);
}

// ---- CSV writers -----------------------------------------------------------

// Radius/diameter decomposition with conjecture residuals, one row per level.
// Center/periphery counts are only known in exhaustive mode and stay empty
// otherwise.
inline void write_distance_csv(std::ostream& out, const std::vector<DistanceReport>& rows) {
  out << "n,radius,central_count,diameter,peripheral_count,inn,out,ring_prefix,dadj,radj,"
         "radius_residual,diameter_residual,radius_recurrence,diameter_recurrence,"
         "ring_prefix_residual,dadj_residual,radj_residual\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.radius << ',';
    if (r.counts_complete) out << r.central_count;
    out << ',' << r.diameter << ',';
    if (r.counts_complete) out << r.peripheral_count;
    out << ',' << r.inn_len << ',' << r.out_len << ',' << r.pinn_len << ',' << r.dadj << ','
        << r.radj << ',' << r.radius_formula_residual << ',' << r.diameter_formula_residual << ','
        << r.radius_recurrence_residual << ',' << r.diameter_recurrence_residual << ','
        << r.pinn_formula_residual << ',' << r.dadj_formula_residual << ','
        << r.radj_formula_residual << '\n';
  }
}

// Eigenvalue table for one level: index, raw value, value renormalized by the
// first nonzero eigenvalue.
inline void write_eigen_csv(std::ostream& out, const SpectralReport& report) {
  out << "j,eigenvalue,renormalized\n";
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i)
    out << (i + 1) << ',' << serialize_detail::format_double(report.eigenvalues[i]) << ','
        << serialize_detail::format_double(report.renormalized[i]) << '\n';
}

// Eigenvalue-ratio grid: one row per index j = 1..k, one column per level
// pair; cells outside the computed triangle stay empty (j = 1 entirely so,
// since the first eigenvalue is zero at every level).
inline void write_rho_csv(std::ostream& out, const RhoGrid& grid) {
  out << "j";
  for (int n = 1; n <= grid.n_max - 1; ++n) out << ",n" << n;
  out << '\n';
  out << "1";
  for (int n = 1; n <= grid.n_max - 1; ++n) out << ',';
  out << '\n';
  for (int j = 2; j <= grid.k; ++j) {
    out << j;
    for (int n = 1; n <= grid.n_max - 1; ++n) {
      out << ',';
      const double v = grid.at(j, n);
      if (!std::isnan(v)) out << serialize_detail::format_double(v);
    }
    out << '\n';
  }
}

// Eigenvalue counting function as step data, then the flagged spectral gaps.
inline void write_counting_csv(std::ostream& out, const CountingFunction& cf) {
  out << "lambda,count\n";
  for (std::size_t i = 0; i < cf.lambda.size(); ++i)
    out << serialize_detail::format_double(cf.lambda[i]) << ',' << cf.count[i] << '\n';
}

inline void write_gaps_csv(std::ostream& out, const CountingFunction& cf) {
  out << "gap_lo,gap_hi,ratio\n";
  for (const auto& gap : cf.gaps)
    out << serialize_detail::format_double(gap.lo) << ',' << serialize_detail::format_double(gap.hi)
        << ',' << serialize_detail::format_double(gap.hi / gap.lo) << '\n';
}

// Eigenmap coordinates: one column per requested eigenfunction, one row per
// vertex in canonical order. Plot-ready: no index column.
inline void write_coords_csv(std::ostream& out, const Eigen::MatrixXd& coords,
                             const std::vector<int>& indices) {
  if (coords.cols() != static_cast<Eigen::Index>(indices.size()))
    throw std::invalid_argument("coordinate column count does not match the index list");
  for (std::size_t i = 0; i < indices.size(); ++i)
    out << (i ? "," : "") << "phi_" << indices[i];
  out << '\n';
  for (Eigen::Index r = 0; r < coords.rows(); ++r) {
    for (Eigen::Index c = 0; c < coords.cols(); ++c)
      out << (c ? "," : "") << serialize_detail::format_double(coords(r, c));
    out << '\n';
  }
}

// Return-probability sequence with standard errors (zero for exact runs).
inline void write_walk_csv(std::ostream& out, const WalkStats& stats) {
  out << "t,p,stderr\n";
  for (std::size_t t = 0; t < stats.return_prob.size(); ++t)
    out << t << ',' << serialize_detail::format_double(stats.return_prob[t]) << ','
        << serialize_detail::format_double(stats.std_error[t]) << '\n';
}

}  // namespace hexacarpet
