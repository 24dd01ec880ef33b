// Batch front door for the library: build and verify graphs, run the
// distance and spectral experiments, and export every table as CSV or JSON.
// One subcommand per artifact; every run writes a JSON manifest describing
// the command, its configuration, and the files it produced.
//
// Exit codes: 0 success (all internally checked invariants passed),
// 1 invariant failure or I/O error, 2 resource cap exceeded, 3 checksum
// failure, 4 invalid arguments.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexacarpet/distances.hpp"
#include "hexacarpet/errors.hpp"
#include "hexacarpet/geometry.hpp"
#include "hexacarpet/graph.hpp"
#include "hexacarpet/serialize.hpp"
#include "hexacarpet/spectral.hpp"
#include "hexacarpet/walks.hpp"
#include "hexacarpet/words.hpp"

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kCliVersion = "1.0.0";

struct RunConfig {
  std::string command;
  int level = 0;
  int max_level = 6;
  int exhaustive_cap = 6;
  int k = 20;
  double tol = hexacarpet::kDefaultEigenTol;
  std::uint64_t seed = hexacarpet::kDefaultSpectralSeed;
  std::uint64_t trials = 0;
  int t_max = 1000;
  int fit_lo = 10;
  int fit_hi = 0;  // 0 = t_max
  int walk_cap = hexacarpet::kExactWalkLevelCap;
  std::string source = "words";
  std::string indices = "2,3";
  std::string format = "csv";
  std::string out_dir;
  std::string file;
  int threads = 1;
};

ordered_json config_json(const RunConfig& c) {
  return ordered_json{{"command", c.command},
                      {"level", c.level},
                      {"max_level", c.max_level},
                      {"exhaustive_cap", c.exhaustive_cap},
                      {"k", c.k},
                      {"tol", c.tol},
                      {"seed", c.seed},
                      {"trials", c.trials},
                      {"t_max", c.t_max},
                      {"fit_lo", c.fit_lo},
                      {"fit_hi", c.fit_hi},
                      {"walk_cap", c.walk_cap},
                      {"source", c.source},
                      {"indices", c.indices},
                      {"format", c.format},
                      {"out", c.out_dir},
                      {"file", c.file},
                      {"threads", c.threads}};
}

// Re-shapes one of our CSV texts as {"columns": [...], "rows": [[...]]} with
// every cell kept as the exact string the CSV writer produced.
ordered_json csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  const auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      cells.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  ordered_json out;
  if (std::getline(in, line)) out["columns"] = split(line);
  out["rows"] = ordered_json::array();
  while (std::getline(in, line)) out["rows"].push_back(split(line));
  return out;
}

// Emits one table: CSV verbatim, or the JSON reshaping of the same bytes.
// Returns the basename actually written.
std::string write_table(const RunConfig& cfg, const std::string& basename,
                        const std::function<void(std::ostream&)>& writer) {
  std::ostringstream text;
  writer(text);
  const bool json = cfg.format == "json";
  const std::string name = basename + (json ? ".json" : ".csv");
  std::ofstream out(fs::path(cfg.out_dir) / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + name);
  if (json)
    out << csv_to_json(text.str()).dump(2) << "\n";
  else
    out << text.str();
  if (!out) throw std::runtime_error("write failed: " + name);
  return name;
}

std::string write_json_file(const RunConfig& cfg, const std::string& name,
                            const ordered_json& body) {
  std::ofstream out(fs::path(cfg.out_dir) / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + name);
  out << body.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + name);
  return name;
}

void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs,
                    double wall_seconds) {
  const ordered_json manifest{
      {"command", cfg.command},
      {"config", config_json(cfg)},
      {"versions",
       ordered_json{{"cli", kCliVersion},
                    {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                  std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                  std::to_string(EIGEN_MINOR_VERSION)},
                    {"compiler", __VERSION__}}},
      {"wall_time_seconds", wall_seconds},
      {"outputs", outputs}};
  write_json_file(cfg, "manifest_" + cfg.command + ".json", manifest);
}

std::vector<int> parse_indices(const std::string& list) {
  std::vector<int> out;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in index list");
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("index list is empty");
  return out;
}

int cmd_build(const RunConfig& cfg, std::vector<std::string>& outputs) {
  hexacarpet::LevelGraph graph;
  if (cfg.source == "words" || cfg.source == "both") {
    graph = hexacarpet::build_word_graph(cfg.level);
  }
  if (cfg.source == "geometry" || cfg.source == "both") {
    const auto levels = hexacarpet::build_subdivision(cfg.level);
    auto geometry = hexacarpet::build_geometry_graph(*levels.back());
    if (cfg.source == "both") {
      const auto report = hexacarpet::verify_isomorphism(graph, geometry);
      if (!report.isomorphic) {
        std::fprintf(stderr, "isomorphism: MISMATCH (%s)\n", report.message.c_str());
        return 1;
      }
      std::printf("isomorphism: OK\n");
    } else {
      graph = std::move(geometry);
    }
  }
  std::printf("level %d: %llu vertices, %llu edges\n", graph.n,
              static_cast<unsigned long long>(graph.num_vertices()),
              static_cast<unsigned long long>(graph.num_edges()));
  const std::string name = "graph_n" + std::to_string(cfg.level) + ".edges";
  hexacarpet::save_graph_file((fs::path(cfg.out_dir) / name).string(), graph);
  outputs.push_back(name);
  std::printf("wrote %s\n", name.c_str());
  return 0;
}

int cmd_check(const RunConfig& cfg, std::vector<std::string>&) {
  const auto graph = hexacarpet::load_graph_file(cfg.file);
  std::printf("%s: level %d, %llu vertices, %llu edges, checksum OK\n", cfg.file.c_str(), graph.n,
              static_cast<unsigned long long>(graph.num_vertices()),
              static_cast<unsigned long long>(graph.num_edges()));
  return 0;
}

int cmd_distances(const RunConfig& cfg, std::vector<std::string>& outputs) {
  const auto rows = hexacarpet::conjecture_tables(cfg.max_level, cfg.exhaustive_cap);
  for (const auto& r : rows)
    std::printf("n=%d: radius %llu, diameter %llu (%s)\n", r.n,
                static_cast<unsigned long long>(r.radius),
                static_cast<unsigned long long>(r.diameter),
                r.counts_complete ? "exhaustive" : "bounded");
  outputs.push_back(write_table(cfg, "distances", [&](std::ostream& out) {
    hexacarpet::write_distance_csv(out, rows);
  }));
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::vector<std::string>& outputs) {
  const auto report = hexacarpet::spectral_report(cfg.level, cfg.k, cfg.tol, cfg.seed);
  std::printf("level %d: %d eigenvalues (tol %g, seed %llu)\n", report.n, report.k, report.tol,
              static_cast<unsigned long long>(report.seed));
  if (report.k >= 4)
    std::printf("lambda_4/lambda_2 = %.4f\n", report.renormalized[3]);
  const auto cf = hexacarpet::counting_function(report.renormalized);
  const std::string tag = "_n" + std::to_string(cfg.level);
  outputs.push_back(write_table(cfg, "eigen" + tag, [&](std::ostream& out) {
    hexacarpet::write_eigen_csv(out, report);
  }));
  outputs.push_back(write_table(cfg, "counting" + tag, [&](std::ostream& out) {
    hexacarpet::write_counting_csv(out, cf);
  }));
  outputs.push_back(write_table(cfg, "gaps" + tag, [&](std::ostream& out) {
    hexacarpet::write_gaps_csv(out, cf);
  }));
  ordered_json body{{"level", report.n},       {"k", report.k},
                    {"tol", report.tol},       {"seed", report.seed},
                    {"eigenvalues", report.eigenvalues},
                    {"renormalized", report.renormalized},
                    {"residual_norms", report.residual_norms}};
  body["tau"] = report.tau;
  body["d_s"] = report.d_s;
  body["gaps"] = ordered_json::array();
  for (const auto& gap : report.counting_gaps) body["gaps"].push_back({gap.lo, gap.hi});
  outputs.push_back(write_json_file(cfg, "spectrum" + tag + ".json", body));
  return 0;
}

int cmd_rho(const RunConfig& cfg, std::vector<std::string>& outputs) {
  const auto grid = hexacarpet::rho_estimates(cfg.max_level, cfg.k, cfg.tol, cfg.seed);
  std::printf("rho = %.4f (tau = %.4f, d_s = %.4f)\n", grid.headline, grid.tau, grid.d_s);
  outputs.push_back(write_table(cfg, "rho_grid", [&](std::ostream& out) {
    hexacarpet::write_rho_csv(out, grid);
  }));
  return 0;
}

int cmd_coords(const RunConfig& cfg, std::vector<std::string>& outputs) {
  const auto indices = parse_indices(cfg.indices);
  int k_needed = cfg.k;
  for (const int j : indices) k_needed = std::max(k_needed, j);
  hexacarpet::LaplacianOperator laplacian(hexacarpet::build_word_graph(cfg.level));
  const auto pairs = hexacarpet::smallest_eigenpairs(laplacian, k_needed, cfg.tol, cfg.seed);
  const auto coords = hexacarpet::eigenmap_coords(pairs, indices);
  std::printf("level %d: %lld rows x %zu columns\n", cfg.level,
              static_cast<long long>(coords.rows()), indices.size());
  outputs.push_back(write_table(cfg, "coords_n" + std::to_string(cfg.level),
                                [&](std::ostream& out) {
                                  hexacarpet::write_coords_csv(out, coords, indices);
                                }));
  return 0;
}

int cmd_walk(const RunConfig& cfg, std::vector<std::string>& outputs) {
  const auto g = hexacarpet::build_word_graph(cfg.level);
  const int fit_hi = cfg.fit_hi > 0 ? cfg.fit_hi : cfg.t_max;
  ordered_json body{{"level", cfg.level}, {"t_max", cfg.t_max},   {"trials", cfg.trials},
                    {"seed", cfg.seed},   {"fit_lo", cfg.fit_lo}, {"fit_hi", fit_hi},
                    {"starts", ordered_json::array()}};

  const auto run_start = [&](const char* label, std::uint32_t x) {
    hexacarpet::WalkStats stats =
        cfg.trials > 0
            ? hexacarpet::monte_carlo_walk(g, x, cfg.t_max, cfg.trials, cfg.seed)
            : hexacarpet::exact_walk_stats(g, x, cfg.t_max, cfg.walk_cap);
    ordered_json entry{{"start", label},
                       {"vertex", x},
                       {"monte_carlo", stats.monte_carlo}};
    try {
      const auto fit = hexacarpet::fit_return_decay(stats, cfg.fit_lo, fit_hi);
      stats.d_s_estimate = fit.d_s;
      stats.d_s_band = fit.d_s_band;
      entry["d_s_evidence"] = fit.d_s;
      entry["d_s_band"] = fit.d_s_band;
      entry["fit_points"] = fit.points;
      std::printf("%s start (vertex %u): d_s = %.4f +- %.4f (evidence)\n", label, x, fit.d_s,
                  fit.d_s_band);
    } catch (const std::invalid_argument& ex) {
      entry["d_s_evidence"] = nullptr;
      std::printf("%s start (vertex %u): no fit (%s)\n", label, x, ex.what());
    }
    const std::string name = "walk_n" + std::to_string(cfg.level) + "_" + label;
    outputs.push_back(write_table(cfg, name, [&](std::ostream& out) {
      hexacarpet::write_walk_csv(out, stats);
    }));
    body["starts"].push_back(entry);
  };
  run_start("boundary", hexacarpet::boundary_start_vertex(cfg.level));
  run_start("interior", hexacarpet::interior_start_vertex(cfg.level));

  outputs.push_back(
      write_json_file(cfg, "walk_n" + std::to_string(cfg.level) + ".json", body));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env_out = std::getenv("HEXACARPET_OUT")) cfg.out_dir = env_out;
  if (cfg.out_dir.empty()) cfg.out_dir = ".";

  CLI::App app{"Hexacarpet graphs: build, verify, measure, solve, export"};
  app.set_version_flag("--version", kCliVersion);
  app.require_subcommand(1);
  app.add_option("--out", cfg.out_dir, "Output directory (env HEXACARPET_OUT overrides default)")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Table format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads,
                 "Worker-thread budget (current implementation computes on one thread)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* build = app.add_subcommand("build", "Build a level graph and write its edge list");
  build->add_option("--level", cfg.level, "Level to build")->required()->check(CLI::PositiveNumber);
  build->add_option("--source", cfg.source, "Construction: words, geometry, or both")
      ->check(CLI::IsMember({"words", "geometry", "both"}))
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "Re-read an edge-list file and verify its checksum");
  check->add_option("--file", cfg.file, "Edge-list file to verify")->required();

  auto* distances = app.add_subcommand("distances", "Radius/diameter tables with residuals");
  distances->add_option("--max-level", cfg.max_level, "Deepest level")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  distances->add_option("--exhaustive-cap", cfg.exhaustive_cap,
                        "Deepest level measured from every source vertex")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalue table, counting function, gaps");
  spectrum->add_option("--level", cfg.level, "Level to solve")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--k", cfg.k, "Number of eigenvalues")->check(CLI::PositiveNumber)->capture_default_str();
  spectrum->add_option("--tol", cfg.tol, "Residual tolerance")->capture_default_str();
  spectrum->add_option("--seed", cfg.seed, "Solver seed")->capture_default_str();

  auto* rho = app.add_subcommand("rho", "Eigenvalue-ratio grid and scaling estimates");
  rho->add_option("--max-level", cfg.max_level, "Deepest level")->check(CLI::PositiveNumber)->capture_default_str();
  rho->add_option("--k", cfg.k, "Eigenvalues per level")->check(CLI::PositiveNumber)->capture_default_str();
  rho->add_option("--tol", cfg.tol, "Residual tolerance")->capture_default_str();
  rho->add_option("--seed", cfg.seed, "Solver seed")->capture_default_str();

  auto* coords = app.add_subcommand("coords", "Eigenfunction coordinates per vertex");
  coords->add_option("--level", cfg.level, "Level to solve")->required()->check(CLI::PositiveNumber);
  coords->add_option("--indices", cfg.indices, "Comma-separated eigenfunction indices (j >= 2)")
      ->capture_default_str();
  coords->add_option("--k", cfg.k, "Minimum eigenpairs to solve")->check(CLI::PositiveNumber)->capture_default_str();
  coords->add_option("--tol", cfg.tol, "Residual tolerance")->capture_default_str();
  coords->add_option("--seed", cfg.seed, "Solver seed")->capture_default_str();

  auto* walk = app.add_subcommand("walk", "Return probabilities from both default starts");
  walk->add_option("--level", cfg.level, "Level to walk on")->required()->check(CLI::PositiveNumber);
  walk->add_option("--t-max", cfg.t_max, "Number of steps")->check(CLI::PositiveNumber)->capture_default_str();
  walk->add_option("--trials", cfg.trials, "Monte Carlo trials (0 = exact)")->capture_default_str();
  walk->add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
  walk->add_option("--fit-lo", cfg.fit_lo, "Fit window start")->check(CLI::PositiveNumber)->capture_default_str();
  walk->add_option("--fit-hi", cfg.fit_hi, "Fit window end (0 = t_max)")->capture_default_str();
  walk->add_option("--cap", cfg.walk_cap, "Exact-iteration level cap")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  const auto started = std::chrono::steady_clock::now();
  int rc = 0;
  std::vector<std::string> outputs;
  try {
    fs::create_directories(cfg.out_dir);
    if (build->parsed()) {
      cfg.command = "build";
      rc = cmd_build(cfg, outputs);
    } else if (check->parsed()) {
      cfg.command = "check";
      rc = cmd_check(cfg, outputs);
    } else if (distances->parsed()) {
      cfg.command = "distances";
      rc = cmd_distances(cfg, outputs);
    } else if (spectrum->parsed()) {
      cfg.command = "spectrum";
      rc = cmd_spectrum(cfg, outputs);
    } else if (rho->parsed()) {
      cfg.command = "rho";
      rc = cmd_rho(cfg, outputs);
    } else if (coords->parsed()) {
      cfg.command = "coords";
      rc = cmd_coords(cfg, outputs);
    } else if (walk->parsed()) {
      cfg.command = "walk";
      rc = cmd_walk(cfg, outputs);
    }
  } catch (const hexacarpet::ResourceLimitError& ex) {
    std::fprintf(stderr, "resource error: %s\n", ex.what());
    return 2;
  } catch (const hexacarpet::ChecksumError& ex) {
    std::fprintf(stderr, "checksum error: %s\n", ex.what());
    return 3;
  } catch (const std::invalid_argument& ex) {
    std::fprintf(stderr, "invalid arguments: %s\n", ex.what());
    return 4;
  } catch (const std::domain_error& ex) {
    std::fprintf(stderr, "invalid arguments: %s\n", ex.what());
    return 4;
  } catch (const std::out_of_range& ex) {
    std::fprintf(stderr, "invalid arguments: %s\n", ex.what());
    return 4;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (rc == 0) write_manifest(cfg, outputs, wall);
  std::fprintf(stderr, "done in %.2fs\n", wall);
  return rc;
}
