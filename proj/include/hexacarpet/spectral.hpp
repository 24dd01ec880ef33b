#pragma once

// Graph-Laplacian spectra of the level graphs: exact operator assembly, a
// deterministic shift-invert Lanczos solver for the smallest eigenpairs,
// renormalized spectra, the cross-level resistance-coefficient grid and the
// spectral dimension derived from it, the eigenvalue counting function with
// gap detection, and eigenfunction-coordinate export.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hexacarpet/errors.hpp"
#include "hexacarpet/graph.hpp"

namespace hexacarpet {

inline constexpr double kDefaultEigenTol = 1e-10;
inline constexpr std::uint64_t kDefaultSpectralSeed = 123456789;

// Combinatorial Laplacian L = D - A of a level graph. The graph data stays in
// integer CSR form, so the matrix-vector product is exact up to one rounding
// per accumulated term; degrees are 2 or 3 throughout.
class LaplacianOperator {
 public:
  explicit LaplacianOperator(LevelGraph g) : g_(std::move(g)) {}

  int level() const noexcept { return g_.n; }
  std::uint64_t dimension() const noexcept { return g_.num_vertices(); }
  const LevelGraph& graph() const noexcept { return g_; }

  // y = L x  (degree(v) * x_v minus the sum over the neighbors of v).
  void apply(const double* x, double* y) const noexcept {
    const std::uint64_t v_count = g_.num_vertices();
    for (std::uint64_t v = 0; v < v_count; ++v) {
      const std::uint32_t b = g_.offsets[v];
      const std::uint32_t e = g_.offsets[v + 1];
      double acc = static_cast<double>(e - b) * x[v];
      for (std::uint32_t i = b; i < e; ++i) acc -= x[g_.neighbors[i]];
      y[v] = acc;
    }
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(x.size());
    apply(x.data(), y.data());
    return y;
  }

 private:
  LevelGraph g_;
};

// Ascending smallest eigenpairs of one Laplacian, with per-pair residuals.
// vectors.col(j) is the unit eigenvector of values[j]; the first pair is the
// exact kernel (eigenvalue 0, constant vector).
struct EigenPairs {
  int n = 0;
  double tol = kDefaultEigenTol;
  std::uint64_t seed = kDefaultSpectralSeed;
  std::vector<double> values;          // ascending, size k
  Eigen::MatrixXd vectors;             // dimension x k, orthonormal
  std::vector<double> residual_norms;  // ||L v - lambda v|| per pair
  int applications = 0;                // shift-invert solves consumed
};

namespace spectral_detail {

// Solves L x = b for b in the mean-zero subspace by grounding vertex 0:
// the principal submatrix on vertices 1..V-1 is positive definite, and its
// solution lifted with x_0 = 0 satisfies the full singular system whenever
// the right-hand side sums to zero. Results are re-centered, so the map is
// the symmetric pseudo-inverse restricted to the orthogonal complement of
// the constants. A short iterative-refinement loop against the exact
// integer operator keeps the solve accurate even at the large levels where
// the smallest eigenvalue, and with it the condition number, is extreme.
class DeflatedInverse {
 public:
  explicit DeflatedInverse(const LaplacianOperator& laplacian)
      : laplacian_(&laplacian), dim_(laplacian.dimension()) {
    if (dim_ < 2) throw std::invalid_argument("Laplacian dimension must be at least 2");
    const LevelGraph& g = laplacian.graph();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(g.neighbors.size() + dim_);
    for (std::uint64_t v = 1; v < dim_; ++v) {
      const auto row = static_cast<int>(v - 1);
      trips.emplace_back(row, row, static_cast<double>(g.degree(static_cast<std::uint32_t>(v))));
      for (const std::uint32_t* it = g.row_begin(static_cast<std::uint32_t>(v));
           it != g.row_end(static_cast<std::uint32_t>(v)); ++it) {
        if (*it >= 1) trips.emplace_back(row, static_cast<int>(*it - 1), -1.0);
      }
    }
    Eigen::SparseMatrix<double> grounded(static_cast<int>(dim_ - 1), static_cast<int>(dim_ - 1));
    grounded.setFromTriplets(trips.begin(), trips.end());
    grounded.makeCompressed();
    ldlt_.compute(grounded);
    if (ldlt_.info() != Eigen::Success)
      throw std::runtime_error("sparse factorization of the grounded Laplacian failed");
  }

  static void center(Eigen::VectorXd& v) { v.array() -= v.mean(); }

  Eigen::VectorXd apply(Eigen::VectorXd b) const {
    center(b);
    const auto tail = static_cast<Eigen::Index>(dim_ - 1);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
    x.tail(tail) = ldlt_.solve(b.tail(tail));
    const double b_scale = std::max(1.0, b.norm());
    for (int sweep = 0; sweep < 3; ++sweep) {
      Eigen::VectorXd r = b - laplacian_->apply(x);
      if (r.norm() <= 1e-13 * b_scale) break;
      x.tail(tail) += ldlt_.solve(r.tail(tail)).eval();
    }
    center(x);
    return x;
  }

 private:
  const LaplacianOperator* laplacian_;
  std::uint64_t dim_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

// Deterministic start vector: mt19937_64 output mapped to [-1, 1). The raw
// engine sequence is pinned by the standard, so runs are reproducible across
// platforms (std::normal_distribution would not be).
inline Eigen::VectorXd seeded_unit_vector(std::uint64_t seed, Eigen::Index dim) {
  std::mt19937_64 rng(seed);
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double u = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
    v[i] = 2.0 * u - 1.0;
  }
  return v;
}

// Two classical Gram-Schmidt passes against the leading `count` columns of
// `basis` and the constant vector. Returns the remaining norm. When `coeffs`
// is non-null, accumulates the removed components (the projection
// coefficients of the symmetric Arnoldi recurrence).
inline double orthogonalize(const Eigen::MatrixXd& basis, Eigen::Index count, Eigen::VectorXd& w,
                            double* coeffs) {
  for (int pass = 0; pass < 2; ++pass) {
    DeflatedInverse::center(w);
    if (count > 0) {
      Eigen::VectorXd c = basis.leftCols(count).transpose() * w;
      w.noalias() -= basis.leftCols(count) * c;
      if (coeffs != nullptr)
        for (Eigen::Index i = 0; i < count; ++i) coeffs[i] += c[i];
    }
  }
  return w.norm();
}

struct InversePairs {
  std::vector<double> theta;  // descending eigenvalues of the deflated inverse
  Eigen::MatrixXd vectors;    // mean-zero orthonormal columns
  int applications = 0;
};

// Thick-restart Lanczos (with full reorthogonalization, so effectively a
// symmetric Arnoldi iteration) for the `want` largest eigenpairs of the
// deflated inverse. Those are exactly the smallest nonzero Laplacian
// eigenvalues; a Lanczos residual bound of r on an inverse pair (theta, v)
// gives ||L v - v/theta|| <= ||L|| r / theta with ||L|| <= 6 here, which is
// why the acceptance threshold below is scaled by max(theta, 1).
inline InversePairs largest_inverse_pairs(const DeflatedInverse& inverse,
                                          std::uint64_t dimension, int want, double tol,
                                          std::uint64_t seed, int budget) {
  const auto dim = static_cast<Eigen::Index>(dimension);
  const Eigen::Index perp = dim - 1;  // dimension of the mean-zero subspace
  if (want > perp) throw std::invalid_argument("requested more pairs than the deflated dimension");
  const Eigen::Index cap =
      std::min<Eigen::Index>(perp, std::clamp<Eigen::Index>(5 * static_cast<Eigen::Index>(want), 64, 256));

  Eigen::MatrixXd basis(dim, cap + 1);
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(cap + 1, cap + 1);
  Eigen::VectorXd start = seeded_unit_vector(seed, dim);
  double nrm = orthogonalize(basis, 0, start, nullptr);
  basis.col(0) = start / nrm;

  int applications = 0;
  Eigen::Index filled = 0;  // columns the operator has been applied to
  bool exhausted = false;
  std::uint64_t reseed = seed;
  // After an invariant-subspace breakdown the Ritz pairs found so far are
  // exact for the captured subspace but may still miss copies of multiple
  // eigenvalues; hold off accepting convergence until the reseeded chain has
  // had enough steps to surface anything the first chain could not reach.
  int cushion = 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small_eig;

  // Acceptance bound for the Lanczos residual estimate of one inverse pair.
  const auto accept = [tol](double theta) { return 0.5 * tol * std::max(theta, 1.0) / 6.0; };

  const auto symmetrized = [&](Eigen::Index m) {
    // The upper triangle holds the actually computed projection coefficients
    // (including restart couplings), so mirror it instead of averaging.
    Eigen::MatrixXd h = proj.topLeftCorner(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < j; ++i) h(j, i) = h(i, j);
    return h;
  };

  while (true) {
    bool converged = false;
    while (filled < cap && applications < budget && !exhausted) {
      Eigen::VectorXd w = inverse.apply(basis.col(filled));
      ++applications;
      const double beta = orthogonalize(basis, filled + 1, w, proj.col(filled).data());
      ++filled;
      if (cushion > 0) --cushion;
      if (beta <= 1e-13) {
        if (filled >= perp) {
          exhausted = true;
        } else {
          // Invariant subspace hit: continue with a fresh direction so the
          // remaining copies of multiple eigenvalues can still be found.
          double fn = 0.0;
          Eigen::VectorXd fresh;
          for (int attempt = 0; attempt < 3 && fn <= 1e-13; ++attempt) {
            fresh = seeded_unit_vector(++reseed, dim);
            fn = orthogonalize(basis, filled, fresh, nullptr);
          }
          if (fn <= 1e-13) {
            exhausted = true;
          } else {
            basis.col(filled) = fresh / fn;
            proj(filled, filled - 1) = 0.0;
            cushion = 12;
          }
        }
      } else {
        basis.col(filled) = w / beta;
        proj(filled, filled - 1) = beta;
      }
      if (exhausted) break;
      if (cushion == 0 && filled >= want) {
        small_eig.compute(symmetrized(filled));
        const auto& theta = small_eig.eigenvalues();  // ascending
        const double beta_link = proj(filled, filled - 1);
        converged = true;
        for (int i = 0; i < want; ++i) {
          const Eigen::Index idx = filled - 1 - i;
          const double th = theta[idx];
          const double res = std::abs(beta_link * small_eig.eigenvectors()(filled - 1, idx));
          if (th <= 0.0 || res > accept(th)) {
            converged = false;
            break;
          }
        }
        if (converged) break;
      }
    }

    if (converged || exhausted || applications >= budget) {
      if (filled < want) {
        std::ostringstream msg;
        msg << "eigensolver ran out of subspace: " << filled << " directions for " << want
            << " requested pairs";
        throw std::runtime_error(msg.str());
      }
      small_eig.compute(symmetrized(filled));
      if (!converged && !exhausted) {
        // Budget exhausted: report how far convergence got.
        const double beta_link = filled < cap ? proj(filled, filled - 1) : 0.0;
        int done = 0;
        double worst = 0.0;
        for (int i = 0; i < want; ++i) {
          const Eigen::Index idx = filled - 1 - i;
          const double res = std::abs(beta_link * small_eig.eigenvectors()(filled - 1, idx));
          worst = std::max(worst, res);
          if (res <= accept(small_eig.eigenvalues()[idx])) ++done;
        }
        std::ostringstream msg;
        msg << "eigensolver did not converge within " << budget << " operator applications: " << done
            << " of " << want << " pairs accepted, worst residual estimate " << worst;
        throw std::runtime_error(msg.str());
      }
      InversePairs out;
      out.applications = applications;
      out.theta.resize(static_cast<std::size_t>(want));
      Eigen::MatrixXd rot(filled, want);
      for (int i = 0; i < want; ++i) {
        const Eigen::Index idx = filled - 1 - i;
        out.theta[static_cast<std::size_t>(i)] = small_eig.eigenvalues()[idx];
        rot.col(i) = small_eig.eigenvectors().col(idx);
      }
      out.vectors.noalias() = basis.leftCols(filled) * rot;
      return out;
    }

    // Thick restart: keep the best Ritz vectors plus the dangling basis
    // vector, compress the projected matrix to their diagonal, and continue.
    small_eig.compute(symmetrized(filled));
    const Eigen::Index keep =
        std::min<Eigen::Index>(2 * static_cast<Eigen::Index>(want) + 10, filled - 1);
    Eigen::MatrixXd rot(filled, keep);
    Eigen::VectorXd kept_theta(keep);
    for (Eigen::Index i = 0; i < keep; ++i) {
      const Eigen::Index idx = filled - 1 - i;
      rot.col(i) = small_eig.eigenvectors().col(idx);
      kept_theta[i] = small_eig.eigenvalues()[idx];
    }
    Eigen::MatrixXd kept = basis.leftCols(filled) * rot;
    Eigen::VectorXd dangling = basis.col(filled);
    proj.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) {
      Eigen::VectorXd col = kept.col(i);
      const double cn = orthogonalize(basis, i, col, nullptr);
      basis.col(i) = col / cn;
      proj(i, i) = kept_theta[i];
    }
    const double dn = orthogonalize(basis, keep, dangling, nullptr);
    if (dn <= 1e-13) {
      Eigen::VectorXd fresh = seeded_unit_vector(++reseed, dim);
      const double fn = orthogonalize(basis, keep, fresh, nullptr);
      basis.col(keep) = fresh / fn;
      cushion = 12;
    } else {
      basis.col(keep) = dangling / dn;
    }
    filled = keep;
  }
}

}  // namespace spectral_detail

// The k smallest Laplacian eigenpairs in ascending order. The kernel pair
// (eigenvalue 0, constant vector) is returned exactly; the rest come from
// shift-invert iteration on the grounded factorization, followed by a
// Rayleigh-Ritz pass and residual check against the exact operator. The
// run is single-threaded and deterministic for a fixed seed. Residuals
// satisfy ||L v - lambda v|| <= tol * max(1, lambda); violations after the
// rescue pass throw with diagnostics.
inline EigenPairs smallest_eigenpairs(const LaplacianOperator& laplacian, int k,
                                      double tol = kDefaultEigenTol,
                                      std::uint64_t seed = kDefaultSpectralSeed) {
  const std::uint64_t dim = laplacian.dimension();
  if (k < 1 || static_cast<std::uint64_t>(k) > dim)
    throw std::invalid_argument("eigenpair count must be in 1..dimension");
  if (!(tol > 0.0)) throw std::invalid_argument("eigensolver tolerance must be positive");

  EigenPairs out;
  out.n = laplacian.level();
  out.tol = tol;
  out.seed = seed;
  out.values.assign(static_cast<std::size_t>(k), 0.0);
  out.residual_norms.assign(static_cast<std::size_t>(k), 0.0);
  out.vectors.resize(static_cast<Eigen::Index>(dim), k);
  out.vectors.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(dim)));
  if (k == 1) return out;

  const spectral_detail::DeflatedInverse inverse(laplacian);
  const int want = k - 1;
  auto top = spectral_detail::largest_inverse_pairs(inverse, dim, want, tol, seed, 50 * k);
  out.applications = top.applications;

  // Resolve the retained subspace directly against the exact operator.
  Eigen::MatrixXd v = std::move(top.vectors);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz;
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (attempt > 0) {
      // Rescue pass: one subspace iteration with the inverse sharpens the
      // whole block toward the invariant subspace, then re-resolve.
      for (int j = 0; j < want; ++j) v.col(j) = inverse.apply(v.col(j));
      out.applications += want;
    }
    for (int j = 0; j < want; ++j) {
      Eigen::VectorXd col = v.col(j);
      const double nrm = spectral_detail::orthogonalize(v, j, col, nullptr);
      if (nrm <= 1e-13) throw std::runtime_error("eigenvector block lost rank");
      v.col(j) = col / nrm;
    }
    Eigen::MatrixXd lv(v.rows(), want);
    for (int j = 0; j < want; ++j) lv.col(j) = laplacian.apply(v.col(j));
    Eigen::MatrixXd small = v.transpose() * lv;
    ritz.compute(0.5 * (small + small.transpose()));
    v = (v * ritz.eigenvectors()).eval();

    bool ok = true;
    for (int j = 0; j < want; ++j) {
      const double lambda = ritz.eigenvalues()[j];
      const double res = (laplacian.apply(v.col(j)) - lambda * v.col(j)).norm();
      out.values[static_cast<std::size_t>(j + 1)] = lambda;
      out.residual_norms[static_cast<std::size_t>(j + 1)] = res;
      out.vectors.col(j + 1) = v.col(j);
      if (res > tol * std::max(1.0, lambda)) ok = false;
    }
    if (ok) return out;
  }
  std::ostringstream msg;
  msg << "eigenpair residuals exceed the contract after rescue; worst "
      << *std::max_element(out.residual_norms.begin(), out.residual_norms.end());
  throw std::runtime_error(msg.str());
}

// Convenience: the k smallest eigenvalues of the level-n graph.
inline std::vector<double> level_spectrum(int n, int k, double tol = kDefaultEigenTol,
                                          std::uint64_t seed = kDefaultSpectralSeed) {
  const LaplacianOperator laplacian(build_word_graph(n));
  return smallest_eigenpairs(laplacian, k, tol, seed).values;
}

// Eigenvalues divided by the first nonzero one, so entry j=2 is exactly 1.
// This is the scale the cross-level comparison tables are stated in.
inline std::vector<double> renormalized_spectrum(const std::vector<double>& eigenvalues) {
  if (eigenvalues.size() < 2) throw std::invalid_argument("need at least two eigenvalues");
  const double base = eigenvalues[1];
  if (!(base > 0.0)) throw std::domain_error("second eigenvalue must be positive");
  std::vector<double> out(eigenvalues.size());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) out[i] = eigenvalues[i] / base;
  out[1] = 1.0;
  return out;
}

// Spectral dimension 2 log 6 / log(6 rho) implied by a resistance
// coefficient rho; requires 6 rho > 1 so the logarithm is positive.
inline double spectral_dimension(double rho) {
  if (!(rho > 1.0 / 6.0)) throw std::domain_error("resistance coefficient must exceed 1/6");
  return 2.0 * std::log(6.0) / std::log(6.0 * rho);
}

// Cross-level resistance-coefficient estimates rho_{j,n} = (1/6) *
// lambda_j(level n) / lambda_j(level n+1), matched by sorted index j.
// Entries are NaN where a level is too small to have a j-th eigenvalue.
struct RhoGrid {
  int k = 0;      // rows cover j = 2..k
  int n_max = 0;  // columns cover n = 1..n_max-1
  std::vector<std::vector<double>> rho;  // rho[j-2][n-1]
  double headline = std::numeric_limits<double>::quiet_NaN();  // rho_{2, n_max-1}
  double tau = std::numeric_limits<double>::quiet_NaN();       // 6 * headline
  double d_s = std::numeric_limits<double>::quiet_NaN();       // dimension from headline

  double at(int j, int n) const {
    if (j < 2 || j > k || n < 1 || n >= n_max) throw std::out_of_range("rho index out of range");
    return rho[static_cast<std::size_t>(j - 2)][static_cast<std::size_t>(n - 1)];
  }
};

// Builds the grid from precomputed ascending spectra, where
// eigenvalues_by_level[i] belongs to level i+1.
inline RhoGrid rho_estimates_from(const std::vector<std::vector<double>>& eigenvalues_by_level) {
  const int n_max = static_cast<int>(eigenvalues_by_level.size());
  if (n_max < 2) throw std::invalid_argument("need spectra for at least two consecutive levels");
  std::size_t k_cap = 0;
  for (const auto& eigs : eigenvalues_by_level) k_cap = std::max(k_cap, eigs.size());
  if (k_cap < 2) throw std::invalid_argument("need at least two eigenvalues per level");

  RhoGrid grid;
  grid.k = static_cast<int>(k_cap);
  grid.n_max = n_max;
  grid.rho.assign(k_cap - 1, std::vector<double>(static_cast<std::size_t>(n_max - 1),
                                                 std::numeric_limits<double>::quiet_NaN()));
  for (int n = 1; n < n_max; ++n) {
    const auto& coarse = eigenvalues_by_level[static_cast<std::size_t>(n - 1)];
    const auto& fine = eigenvalues_by_level[static_cast<std::size_t>(n)];
    const std::size_t rows = std::min(coarse.size(), fine.size());
    for (std::size_t j = 2; j <= rows; ++j) {
      const double denom = fine[j - 1];
      if (!(denom > 0.0)) continue;
      grid.rho[j - 2][static_cast<std::size_t>(n - 1)] = coarse[j - 1] / (6.0 * denom);
    }
  }
  grid.headline = grid.rho[0][static_cast<std::size_t>(n_max - 2)];
  if (std::isfinite(grid.headline)) {
    grid.tau = 6.0 * grid.headline;
    grid.d_s = spectral_dimension(grid.headline);
  }
  return grid;
}

// Computes the spectra for levels 1..n_max and builds the grid. k is capped
// by each level's dimension.
inline RhoGrid rho_estimates(int n_max, int k, double tol = kDefaultEigenTol,
                             std::uint64_t seed = kDefaultSpectralSeed) {
  if (n_max < 2) throw std::invalid_argument("need at least two levels");
  if (k < 2) throw std::invalid_argument("need at least two eigenvalues");
  std::vector<std::vector<double>> spectra;
  spectra.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const int level_k = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(k), pow6(n)));
    spectra.push_back(level_spectrum(n, level_k, tol, seed));
  }
  return rho_estimates_from(spectra);
}

// A maximal interval between consecutive eigenvalues whose ratio reaches the
// configured threshold; the counting function is flat across it.
struct GapInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct CountingFunction {
  std::vector<double> lambda;       // distinct values, ascending
  std::vector<std::int64_t> count;  // N(lambda) at each distinct value
  std::vector<GapInterval> gaps;
};

// N(lambda) = #{eigenvalues <= lambda} as step data, plus the detected gaps.
// Ratios are only meaningful between positive eigenvalues, so the kernel
// value never opens a gap.
inline CountingFunction counting_function(const std::vector<double>& eigenvalues,
                                          double gap_ratio = 1.5) {
  if (!(gap_ratio > 1.0)) throw std::invalid_argument("gap ratio must exceed 1");
  if (!std::is_sorted(eigenvalues.begin(), eigenvalues.end()))
    throw std::invalid_argument("eigenvalues must be ascending");
  CountingFunction out;
  for (const double value : eigenvalues) {
    if (!out.lambda.empty() && value == out.lambda.back()) {
      ++out.count.back();
      continue;
    }
    out.lambda.push_back(value);
    out.count.push_back(out.count.empty() ? 1 : out.count.back() + 1);
  }
  for (std::size_t i = 0; i + 1 < eigenvalues.size(); ++i) {
    const double lo = eigenvalues[i];
    const double hi = eigenvalues[i + 1];
    if (lo > 0.0 && hi / lo >= gap_ratio) {
      if (!out.gaps.empty() && out.gaps.back().lo == lo) continue;  // duplicates of lo
      out.gaps.push_back(GapInterval{lo, hi});
    }
  }
  return out;
}

// Per-vertex coordinates of the chosen eigenfunctions: row v holds
// (phi_{j1}(v), phi_{j2}(v), ...). Indices are the 1-based positions in the
// ascending spectrum and must skip the constant eigenfunction j = 1. Each
// column's sign is fixed so the entry at vertex 0 is positive, falling back
// to the first entry that is not negligibly small.
inline Eigen::MatrixXd eigenmap_coords(const EigenPairs& pairs, const std::vector<int>& indices) {
  Eigen::MatrixXd coords(pairs.vectors.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t c = 0; c < indices.size(); ++c) {
    const int j = indices[c];
    if (j < 2) throw std::out_of_range("coordinate indices start at 2: j = 1 is the constant");
    if (j > static_cast<int>(pairs.values.size()))
      throw std::out_of_range("coordinate index exceeds the computed eigenpair count");
    Eigen::VectorXd col = pairs.vectors.col(j - 1);
    const double scale = col.cwiseAbs().maxCoeff();
    double anchor = col[0];
    if (std::abs(anchor) <= 1e-12 * scale) {
      anchor = 0.0;
      for (Eigen::Index i = 0; i < col.size(); ++i) {
        if (std::abs(col[i]) > 1e-12 * scale) {
          anchor = col[i];
          break;
        }
      }
    }
    if (anchor < 0.0) col = -col;
    coords.col(static_cast<Eigen::Index>(c)) = col;
  }
  return coords;
}

// Everything the spectral pipeline reports for one level: raw and
// renormalized eigenvalues with residuals, the resistance grid over all
// coarser levels, the scale factor tau and spectral dimension from its last
// column, and the gaps of the renormalized counting function.
struct SpectralReport {
  int n = 0;
  int k = 0;
  double tol = kDefaultEigenTol;
  std::uint64_t seed = kDefaultSpectralSeed;
  std::vector<double> eigenvalues;
  std::vector<double> renormalized;
  std::vector<double> residual_norms;
  RhoGrid rho_table;
  double tau = std::numeric_limits<double>::quiet_NaN();
  double d_s = std::numeric_limits<double>::quiet_NaN();
  std::vector<GapInterval> counting_gaps;
};

inline SpectralReport spectral_report(int n, int k, double tol = kDefaultEigenTol,
                                      std::uint64_t seed = kDefaultSpectralSeed,
                                      double gap_ratio = 1.5) {
  if (n < 1) throw std::invalid_argument("level must be at least 1");
  SpectralReport report;
  report.n = n;
  report.k = k;
  report.tol = tol;
  report.seed = seed;

  std::vector<std::vector<double>> spectra;
  spectra.reserve(static_cast<std::size_t>(n));
  for (int m = 1; m < n; ++m) {
    const int level_k = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(k), pow6(m)));
    spectra.push_back(level_spectrum(m, level_k, tol, seed));
  }
  const LaplacianOperator laplacian(build_word_graph(n));
  const int level_k = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(k), pow6(n)));
  report.k = level_k;  // requests beyond the dimension cap at the dimension
  EigenPairs pairs = smallest_eigenpairs(laplacian, level_k, tol, seed);
  report.eigenvalues = pairs.values;
  report.renormalized = renormalized_spectrum(pairs.values);
  report.residual_norms = pairs.residual_norms;
  spectra.push_back(pairs.values);

  if (n >= 2) {
    report.rho_table = rho_estimates_from(spectra);
    report.tau = report.rho_table.tau;
    report.d_s = report.rho_table.d_s;
  }
  report.counting_gaps = counting_function(report.renormalized, gap_ratio).gaps;
  return report;
}

}  // namespace hexacarpet
