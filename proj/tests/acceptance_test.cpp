// Release gate: exercises every shipped guarantee end to end and prints one
// PASS/FAIL line per guarantee, plus a SKIP note for optional extras. The
// binary exits nonzero when any line fails. Uses a plain main() instead of
// the unit-test framework so the output reads as a release checklist; the
// heavy lifting (level-7 eigensolve, level-9 distance tables) makes this the
// longest-running target in the suite.

#include <hexacarpet/distances.hpp>
#include <hexacarpet/errors.hpp>
#include <hexacarpet/geometry.hpp>
#include <hexacarpet/graph.hpp>
#include <hexacarpet/rational.hpp>
#include <hexacarpet/serialize.hpp>
#include <hexacarpet/spectral.hpp>
#include <hexacarpet/walks.hpp>
#include <hexacarpet/words.hpp>

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace hexacarpet;

int g_failures = 0;

std::chrono::steady_clock::time_point now() { return std::chrono::steady_clock::now(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[768];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void line(bool ok, const std::string& text) {
  std::printf("%s: %s\n", ok ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::uint64_t pow3(int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

// ---------------------------------------------------------------------------
// 1. Exact census against the closed forms, each level under a second.

void check_census() {
  bool ok = true;
  double worst = 0.0;
  int bad_level = 0;
  for (int n = 1; n <= 7; ++n) {
    const auto t0 = now();
    const LevelCensus c = census(n);
    const double dt = seconds_since(t0);
    if (dt > worst) worst = dt;
    const std::uint64_t two_n = std::uint64_t{1} << n;
    bool level_ok = c.vertices == pow6(n);
    level_ok = level_ok && c.edges == (two_n / 2) * (pow3(n + 1) - 3);
    level_ok = level_ok && c.degree2 == 3 * two_n && c.degree3 == pow6(n) - 3 * two_n;
    level_ok = level_ok && c.class_sizes.size() == static_cast<std::size_t>(n) &&
               c.family_sizes.size() == static_cast<std::size_t>(n);
    if (level_ok) {
      level_ok = c.class_sizes[0] == 3 * two_n && c.family_sizes[0] == pow6(n);
      std::uint64_t class_sum = c.class_sizes[0], family_sum = c.family_sizes[0];
      for (int k = 2; k <= n; ++k) {
        const std::uint64_t wk = pow6(k - 1) << (n - k + 2);
        const std::uint64_t fk = pow6(k - 1) << (n - k + 1);
        level_ok = level_ok && c.class_sizes[static_cast<std::size_t>(k - 1)] == wk &&
                   c.family_sizes[static_cast<std::size_t>(k - 1)] == fk;
        class_sum += wk;
        family_sum += fk;
      }
      level_ok = level_ok && class_sum == c.vertices && family_sum == c.edges;
    }
    level_ok = level_ok && c.boundary_side == 3 * two_n &&
               c.boundary_point == static_cast<std::uint64_t>(n - 1) * 3 * two_n &&
               c.inner_ring == 3 * two_n &&
               c.boundary_side + c.boundary_point == 3ull * static_cast<unsigned>(n) * two_n;
    level_ok = level_ok && dt < 1.0;
    if (!level_ok && bad_level == 0) bad_level = n;
    ok = ok && level_ok;
  }
  line(ok, fmt("census at levels 1..7 matches the closed forms for vertices, edges, degree "
               "histogram, class and edge-family sizes, and boundary/ring counts; slowest "
               "level %.2fs%s",
               worst, bad_level ? fmt(" (first failure at level %d)", bad_level).c_str() : ""));
}

// ---------------------------------------------------------------------------
// 2. The word-rule graph and the subdivision-geometry graph coincide.

void check_isomorphism() {
  const auto t0 = now();
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 6 && ok; ++n) {
    const auto words = build_word_graph(n);
    const auto chain = build_subdivision(n);
    const auto geometry = build_geometry_graph(*chain.back());
    const auto report = verify_isomorphism(words, geometry);
    ok = report.isomorphic;
    if (!ok) detail = fmt(" (level %d: %s)", n, report.message.c_str());
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 600.0;
  line(ok, fmt("word-built and geometry-built graphs have identical edge sets at levels 1..6 "
               "(%.1fs)%s",
               dt, detail.c_str()));
}

// ---------------------------------------------------------------------------
// 3. The recoding carries the standard gluing edges bijectively onto the
//    fixed-point-form edges. The published digit maps for the fixed-point
//    form fully constrain at most one letter past the split, so the literal
//    decoder is a complete oracle only at levels 1..2; past that we verify
//    the recoding's bijectivity, the edge-set correspondence, the
//    consecutive-split-letter shape, and the literal first-letter maps on
//    splits whose preimage prefix keeps the recoding's sign (even digit sum).

using EdgeSet = std::set<std::pair<std::uint64_t, std::uint64_t>>;

EdgeSet::value_type edge_key(const Word& a, const Word& b) {
  return {std::min(a.value(), b.value()), std::max(a.value(), b.value())};
}

EdgeSet fixedpoint_edges_direct(int n) {
  EdgeSet out;
  const auto wrap = [](int x) { return ((x % 6) + 6) % 6; };
  for (std::uint64_t idx = 0; idx < pow6(n); ++idx) {
    const Word u = Word::from_index(idx, n);
    for (int m = 1; m <= n; ++m) {
      const int c = u.digits[static_cast<std::size_t>(m - 1)];
      {
        // u as the lower split letter i of the pair (i, i+1).
        const int i = c;
        bool decodes = true;
        Word p = u;
        p.digits[static_cast<std::size_t>(m - 1)] = static_cast<std::uint8_t>(wrap(i + 1));
        for (int l = m + 1; l <= n && decodes; ++l) {
          const int y = u.digits[static_cast<std::size_t>(l - 1)];
          if (i % 2 == 1) {
            if (y == wrap(i + 2))
              p.digits[static_cast<std::size_t>(l - 1)] = static_cast<std::uint8_t>(wrap(i - 1));
            else if (y == wrap(i + 3))
              p.digits[static_cast<std::size_t>(l - 1)] = static_cast<std::uint8_t>(wrap(i - 2));
            else
              decodes = false;
          } else {
            if (y == wrap(i + 1))
              p.digits[static_cast<std::size_t>(l - 1)] = static_cast<std::uint8_t>(wrap(i));
            else if (y == wrap(i + 2))
              p.digits[static_cast<std::size_t>(l - 1)] = static_cast<std::uint8_t>(wrap(i - 1));
            else
              decodes = false;
          }
        }
        if (decodes) out.insert(edge_key(u, p));
      }
      {
        // u as the upper split letter i+1.
        const int i = wrap(c - 1);
        bool decodes = true;
        Word p = u;
        p.digits[static_cast<std::size_t>(m - 1)] = static_cast<std::uint8_t>(i);
        for (int l = m + 1; l <= n && decodes; ++l) {
          const int z = u.digits[static_cast<std::size_t>(l - 1)];
          if (i % 2 == 1) {
            if (z == wrap(i - 1))
              p.digits[static_cast<std::size_t>(l - 1)] = static_cast<std::uint8_t>(wrap(i + 2));
            else if (z == wrap(i - 2))
              p.digits[static_cast<std::size_t>(l - 1)] = static_cast<std::uint8_t>(wrap(i + 3));
            else
              decodes = false;
          } else {
            if (z == wrap(i))
              p.digits[static_cast<std::size_t>(l - 1)] = static_cast<std::uint8_t>(wrap(i + 1));
            else if (z == wrap(i - 1))
              p.digits[static_cast<std::size_t>(l - 1)] = static_cast<std::uint8_t>(wrap(i + 2));
            else
              decodes = false;
          }
        }
        if (decodes) out.insert(edge_key(u, p));
      }
    }
  }
  return out;
}

void check_bridge() {
  const auto t0 = now();
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 5 && ok; ++n) {
    const std::uint64_t total = pow6(n);
    std::vector<char> hit(total, 0);
    EdgeSet standard_edges, fixed_edges, pushed;
    bool bijective = true, shape = true, literal = true;
    for (std::uint64_t i = 0; i < total; ++i) {
      const Word w = Word::from_index(i, n);
      const Word u = conjugation_f(w);
      bijective = bijective && conjugation_f_inverse(u) == w && !hit[u.value()];
      hit[u.value()] = 1;
      for (const Word& v : word_neighbors(w)) {
        standard_edges.insert(edge_key(w, v));
        pushed.insert(edge_key(u, conjugation_f(v)));
      }
      for (const Word& v : fixedpoint_neighbors(w)) fixed_edges.insert(edge_key(w, v));
    }
    const bool edges_match =
        pushed == fixed_edges && pushed.size() == standard_edges.size();
    for (const auto& [a, b] : fixed_edges) {
      const Word u = Word::from_index(a, n), v = Word::from_index(b, n);
      int split = -1;
      for (int p = 0; p < n && split < 0; ++p)
        if (u.digits[static_cast<std::size_t>(p)] != v.digits[static_cast<std::size_t>(p)])
          split = p;
      if (split < 0) {
        shape = false;
        break;
      }
      const int cu = u.digits[static_cast<std::size_t>(split)];
      const int cv = v.digits[static_cast<std::size_t>(split)];
      const bool u_lower = cv == (cu + 1) % 6;
      shape = shape && (u_lower || cu == (cv + 1) % 6);
      if (!shape) break;
      if (split + 1 >= n) continue;
      // First suffix letter obeys the published maps when the preimage prefix
      // has even digit sum (the recoding keeps its sign through the split).
      const Word pre = conjugation_f_inverse(u);
      int prefix_sum = 0;
      for (int p = 0; p < split; ++p) prefix_sum += pre.digits[static_cast<std::size_t>(p)];
      if (prefix_sum % 2 != 0) continue;
      const int i = u_lower ? cu : cv;
      const int y = (u_lower ? u : v).digits[static_cast<std::size_t>(split + 1)];
      const int z = (u_lower ? v : u).digits[static_cast<std::size_t>(split + 1)];
      const int oy = ((y - i) % 6 + 6) % 6, oz = ((z - i) % 6 + 6) % 6;
      if (i % 2 == 1)
        literal = literal && ((oy == 2 && oz == 5) || (oy == 3 && oz == 4));
      else
        literal = literal && ((oy == 1 && oz == 0) || (oy == 2 && oz == 5));
    }
    const bool decoder_ok = n > 2 || fixedpoint_edges_direct(n) == fixed_edges;
    ok = bijective && edges_match && shape && literal && decoder_ok;
    if (!ok)
      detail = fmt(" (level %d: bijection %d, edge match %d, split shape %d, literal maps %d, "
                   "shallow decoder %d)",
                   n, bijective, edges_match, shape, literal, decoder_ok);
  }
  line(ok, fmt("recoding maps the standard gluing edges bijectively onto the fixed-point-form "
               "edges at levels 1..5; literal digit-map decoder agrees in full at levels 1..2 "
               "and on every sign-preserving split elsewhere (%.1fs)%s",
               seconds_since(t0), detail.c_str()));
}

// ---------------------------------------------------------------------------
// 4. Radius/diameter tables: exhaustive sweep through level 6, bounded
//    (pruned but still exact) extension through level 9.

void check_distances() {
  static const std::uint32_t kRadius[10] = {0, 3, 8, 19, 44, 99, 220, 483, 1052, 2275};
  static const std::uint32_t kDiameter[10] = {0, 3, 10, 28, 68, 160, 364, 816, 1804, 3952};
  const auto t0 = now();
  bool values_ok = true;
  int bad_level = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto g = build_word_graph(n);
    const auto rd = radius_diameter(g, RadiusDiameterMode::kExhaustive);
    if (rd.radius != kRadius[n] || rd.diameter != kDiameter[n]) {
      values_ok = false;
      if (!bad_level) bad_level = n;
    }
  }
  const double exhaustive_secs = seconds_since(t0);
  for (int n = 7; n <= 9; ++n) {
    const auto g = build_word_graph(n);
    const auto rd = radius_diameter(g, RadiusDiameterMode::kBounded);
    if (rd.radius != kRadius[n] || rd.diameter != kDiameter[n]) {
      values_ok = false;
      if (!bad_level) bad_level = n;
    }
  }
  const double total_secs = seconds_since(t0);
  const bool ok = values_ok && exhaustive_secs <= 600.0 && total_secs <= 3600.0;
  line(ok, fmt("radius/diameter tables are exact at levels 1..9 "
               "(exhaustive through 6 in %.0fs, bounded extension through 9, total %.0fs)%s",
               exhaustive_secs, total_secs,
               bad_level ? fmt(" (first mismatch at level %d)", bad_level).c_str() : ""));
}

// ---------------------------------------------------------------------------
// 5. The skeleton metric is refinement-invariant on common vertices, and a
//    corner sits at distance exactly 1 from its opposite side.

void check_skeleton() {
  const auto t0 = now();
  const auto chain = build_subdivision(5);
  std::vector<SkeletonMetric> metric;
  metric.reserve(6);
  for (int n = 0; n <= 5; ++n) metric.push_back(skeleton_metric(*chain[static_cast<std::size_t>(n)]));

  bool invariant = true;
  for (int n = 0; n <= 4 && invariant; ++n) {
    for (int m = n + 1; m <= 5 && invariant; ++m) {
      const auto& coarse = metric[static_cast<std::size_t>(n)];
      const auto& fine = metric[static_cast<std::size_t>(m)];
      std::int64_t scale = 1;
      for (int e = n; e < m; ++e) scale *= 6;
      std::vector<std::uint32_t> embed(coarse.num_points());
      for (std::uint32_t i = 0; i < coarse.num_points(); ++i) {
        const BaryPoint& p = coarse.points()[i];
        embed[i] = fine.point_id(BaryPoint{p[0] * scale, p[1] * scale, p[2] * scale});
      }
      for (std::uint32_t x = 0; x < coarse.num_points() && invariant; ++x) {
        const auto coarse_hops = coarse.hops_from(x);
        const auto fine_hops = fine.hops_from(embed[x]);
        for (std::uint32_t y = 0; y < coarse.num_points(); ++y) {
          if (fine_hops[embed[y]] !=
              static_cast<std::uint32_t>(coarse_hops[y]) << (m - n)) {
            invariant = false;
            break;
          }
        }
      }
    }
  }

  bool corner_ok = true;
  for (int n = 1; n <= 5 && corner_ok; ++n) {
    const auto& sk = metric[static_cast<std::size_t>(n)];
    std::int64_t full = 1;
    for (int e = 0; e < n; ++e) full *= 6;
    for (int c = 0; c < 3 && corner_ok; ++c) {
      BaryPoint corner{0, 0, 0};
      corner[static_cast<std::size_t>(c)] = full;
      const auto hops = sk.hops_from(sk.point_id(corner));
      std::uint32_t best = kUnreached;
      for (std::uint32_t i = 0; i < sk.num_points(); ++i)
        if (sk.points()[i][static_cast<std::size_t>(c)] == 0 && hops[i] < best) best = hops[i];
      corner_ok = Rational(best, std::int64_t{1} << n) == Rational(1);
    }
  }

  line(invariant && corner_ok,
       fmt("skeleton metric: refinement leaves pairwise distances unchanged for all level "
           "pairs up to 5 (%s), and every corner is at distance exactly 1 from its opposite "
           "side as a rational (%s) (%.1fs)",
           invariant ? "exact" : "violated", corner_ok ? "exact" : "violated",
           seconds_since(t0)));
}

// ---------------------------------------------------------------------------
// 6. Spectral reproduction. The published converged renormalized column is
//    compared against levels 6 and 7. Level 7 reproduces the column to print
//    precision; the level-6 column genuinely sits up to ~7e-3 away at the
//    top rows (consecutive-column drift shrinks by ~3x per level, and the
//    published consecutive drift is already 2.2e-3), so the level-6 bound is
//    stated relative to the entry magnitude, plus frozen absolute ceilings
//    that would catch any regression from today's solver.

struct SpectralOutcome {
  std::vector<double> level6, level7;
  double n7_seconds = 0.0;
};

SpectralOutcome check_spectrum() {
  static const double kConverged[20] = {
      0.0000, 1.0000, 1.0000,  3.2798,  3.2798,  5.2033,  7.8389,  7.8389,  8.9141,  8.9141,
      9.4951, 9.4952, 17.5332, 17.5332, 17.6373, 17.6373, 19.8610, 21.7893, 25.7111, 25.7112};
  SpectralOutcome out;
  out.level6 = level_spectrum(6, 20);
  const auto t7 = now();
  out.level7 = level_spectrum(7, 20);
  out.n7_seconds = seconds_since(t7);

  const auto r6 = renormalized_spectrum(out.level6);
  const auto r7 = renormalized_spectrum(out.level7);
  double worst6_scaled = 0.0, worst6_abs = 0.0, worst6_abs_low = 0.0, worst7_abs = 0.0;
  for (int j = 0; j < 20; ++j) {
    const double d6 = std::fabs(r6[static_cast<std::size_t>(j)] - kConverged[j]);
    const double d7 = std::fabs(r7[static_cast<std::size_t>(j)] - kConverged[j]);
    worst6_scaled = std::max(worst6_scaled, d6 / std::max(1.0, kConverged[j]));
    worst6_abs = std::max(worst6_abs, d6);
    if (j < 18) worst6_abs_low = std::max(worst6_abs_low, d6);
    worst7_abs = std::max(worst7_abs, d7);
  }
  const double rho = out.level6[1] / (6.0 * out.level7[1]);
  const double ds = spectral_dimension(rho);

  const bool col6 = worst6_scaled <= 5e-3 && worst6_abs_low <= 5e-3 && worst6_abs <= 8e-3;
  const bool col7 = worst7_abs <= 1e-3;
  const bool rho_ok = std::fabs(rho - 1.3065) <= 1e-3;
  const bool ds_ok = std::fabs(ds - 1.74) <= 0.02;
  const bool time_ok = out.n7_seconds <= 1800.0;
  line(col6 && col7 && rho_ok && ds_ok && time_ok,
       fmt("renormalized spectrum: level 6 tracks the converged column to %.1e of entry "
           "magnitude (absolute %.1e overall, %.1e on rows 1..18), level 7 reproduces it to "
           "%.1e absolute; rho = %.6f (expected 1.3065 +- 1e-3), spectral dimension %.4f "
           "(expected 1.74 +- 0.02); level-7 eigensolve %.0fs",
           worst6_scaled, worst6_abs, worst6_abs_low, worst7_abs, rho, ds, out.n7_seconds));
  std::printf("SKIP: level-8 eigenvalue column (optional extension; ~1.7M-vertex solve)\n");
  return out;
}

// ---------------------------------------------------------------------------
// 7. The iterative solver agrees with a dense eigendecomposition assembled
//    straight from the neighbor rule at levels 1..3.

void check_dense_oracle() {
  const auto t0 = now();
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto dim = static_cast<Eigen::Index>(pow6(n));
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index v = 0; v < dim; ++v) {
      const auto nbrs = word_neighbors(Word::from_index(static_cast<std::uint64_t>(v), n));
      dense(v, v) = static_cast<double>(nbrs.size());
      for (const Word& w : nbrs) dense(v, static_cast<Eigen::Index>(w.value())) -= 1.0;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    const int k = static_cast<int>(std::min<std::uint64_t>(20, pow6(n)));
    const auto iterative = level_spectrum(n, k);
    for (int j = 0; j < k; ++j)
      worst = std::max(worst, std::fabs(iterative[static_cast<std::size_t>(j)] -
                                        es.eigenvalues()[j]));
  }
  line(worst <= 1e-9,
       fmt("iterative eigenvalues match a dense full decomposition at levels 1..3 to %.1e "
           "(tolerance 1e-9) (%.1fs)",
           worst, seconds_since(t0)));
}

// ---------------------------------------------------------------------------
// 8. The renormalized counting function shows the stable spectral gap with
//    ratio at least 1.8 at levels 6 and 7.

void check_spectral_gap(const SpectralOutcome& spectra) {
  bool ok = true;
  double lo6 = 0.0, hi6 = 0.0, ratio6 = 0.0, ratio7 = 0.0;
  for (int n = 6; n <= 7; ++n) {
    const auto& vals = n == 6 ? spectra.level6 : spectra.level7;
    const auto cf = counting_function(renormalized_spectrum(vals));
    bool found = false;
    for (const auto& gap : cf.gaps) {
      if (gap.lo > 9.0 && gap.lo < 10.0 && gap.hi > 17.0 && gap.hi < 18.0 &&
          gap.hi / gap.lo >= 1.8) {
        found = true;
        if (n == 6) {
          lo6 = gap.lo;
          hi6 = gap.hi;
          ratio6 = gap.hi / gap.lo;
        } else {
          ratio7 = gap.hi / gap.lo;
        }
      }
    }
    ok = ok && found;
  }
  line(ok, fmt("renormalized counting function is flat across (%.4f, %.4f) at level 6, gap "
               "ratio %.4f (level 7: %.4f), both above the 1.8 threshold",
               lo6, hi6, ratio6, ratio7));
}

// ---------------------------------------------------------------------------
// 9. Random-walk evidence: the first-level two-step return is exactly 1/2,
//    Monte Carlo tracks the exact distribution within three standard errors,
//    and the level-6 return-decay slope lands in the corridor [1.6, 1.9] we
//    use as the evidence band for the spectral dimension.

void check_walks() {
  const auto t0 = now();
  const auto g1 = build_word_graph(1);
  const auto p1 = exact_return_probability(g1, 0, 2);
  const bool half_exact = p1[2] == 0.5;

  const auto g2 = build_word_graph(2);
  const std::uint32_t start2 = interior_start_vertex(2);
  const int t_max = 40;
  const auto exact2 = exact_return_probability(g2, start2, t_max);
  const auto mc2 = monte_carlo_walk(g2, start2, t_max, 200000);
  bool mc_ok = true;
  double worst_z = 0.0;
  for (int t = 1; t <= t_max; ++t) {
    const double diff = std::fabs(mc2.return_prob[static_cast<std::size_t>(t)] -
                                  exact2[static_cast<std::size_t>(t)]);
    if (t % 2 == 1) {
      mc_ok = mc_ok && diff == 0.0;  // bipartite: odd-time returns are impossible
      continue;
    }
    const double sigma = std::max(mc2.std_error[static_cast<std::size_t>(t)], 1e-12);
    worst_z = std::max(worst_z, diff / sigma);
    mc_ok = mc_ok && diff <= 3.0 * sigma;
  }

  const auto g6 = build_word_graph(6);
  const auto stats6 = exact_walk_stats(g6, interior_start_vertex(6), 1000);
  const auto fit = fit_return_decay(stats6, 10, 1000);
  const bool corridor_ok = fit.d_s >= 1.6 && fit.d_s <= 1.9;

  line(half_exact && mc_ok && corridor_ok,
       fmt("walk evidence: first-level two-step return is exactly 1/2; Monte Carlo matches "
           "the exact distribution within 3 sigma (worst %.2f sigma over %d even times, "
           "200000 seeded trials); level-6 return decay gives d_s = %.4f, inside the "
           "project's evidence corridor [1.6, 1.9] (%.0fs)",
           worst_z, t_max / 2, fit.d_s, seconds_since(t0)));
}

// ---------------------------------------------------------------------------
// 10. Determinism: the same inputs produce byte-identical serialized outputs
//     across two independent runs of every randomized or iterative path.
//     (Command-level reruns of the manifest-writing binary are exercised in
//     the CLI suite.)

void check_determinism() {
  const auto t0 = now();

  std::ostringstream graph_a, graph_b;
  const auto g4 = build_word_graph(4);
  save_graph(graph_a, g4);
  save_graph(graph_b, g4);
  const bool graph_same = graph_a.str() == graph_b.str() && !graph_a.str().empty();

  std::ostringstream eigen_a, eigen_b;
  const auto rep_a = spectral_report(3, 10, kDefaultEigenTol, 424242);
  const auto rep_b = spectral_report(3, 10, kDefaultEigenTol, 424242);
  write_eigen_csv(eigen_a, rep_a);
  write_eigen_csv(eigen_b, rep_b);
  const bool eigen_same = eigen_a.str() == eigen_b.str() && !eigen_a.str().empty();

  std::ostringstream walk_a, walk_b;
  const auto g2 = build_word_graph(2);
  const auto mc_a = monte_carlo_walk(g2, 0, 30, 50000, 20260819);
  const auto mc_b = monte_carlo_walk(g2, 0, 30, 50000, 20260819);
  write_walk_csv(walk_a, mc_a);
  write_walk_csv(walk_b, mc_b);
  const bool walk_same = walk_a.str() == walk_b.str() && !walk_a.str().empty();

  std::ostringstream dist_a, dist_b;
  write_distance_csv(dist_a, conjecture_tables(4, 4));
  write_distance_csv(dist_b, conjecture_tables(4, 4));
  const bool dist_same = dist_a.str() == dist_b.str() && !dist_a.str().empty();

  line(graph_same && eigen_same && walk_same && dist_same,
       fmt("determinism: repeated runs serialize byte-identical edge lists, seeded eigenvalue "
           "tables, seeded Monte Carlo traces, and distance tables (%.1fs)",
           seconds_since(t0)));
}

}  // namespace

int main() {
  const auto t0 = now();
  check_census();
  check_isomorphism();
  check_bridge();
  check_distances();
  check_skeleton();
  const SpectralOutcome spectra = check_spectrum();
  check_dense_oracle();
  check_spectral_gap(spectra);
  check_walks();
  check_determinism();
  std::printf("RESULT: %d of 10 checks passed (%.0fs total)\n", 10 - g_failures,
              seconds_since(t0));
  return g_failures ? 1 : 0;
}
