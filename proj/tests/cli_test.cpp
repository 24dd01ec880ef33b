// End-to-end checks of the command-line tool: exit codes, stdout claims,
// file layouts, and byte-determinism of seeded reruns. The binary path
// arrives in the HEXACARPET_CLI environment variable.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int rc = -1;
  std::string out;
};

const char* cli_path() { return std::getenv("HEXACARPET_CLI"); }

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult result;
  if (!pipe) return result;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) result.out += buf;
  const int status = pclose(pipe);
  result.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
 public:
  TempDir() {
    char tmpl[] = "/tmp/hexcli_XXXXXX";
    path_ = mkdtemp(tmpl);
  }
  ~TempDir() { fs::remove_all(path_); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!cli_path()) GTEST_SKIP() << "HEXACARPET_CLI not set";
  }
};

TEST_F(Cli, BuildBothVerifiesAndCheckRoundTrips) {
  TempDir dir;
  const auto build = run_cli("--out " + dir.path() + " build --level 3 --source both");
  EXPECT_EQ(build.rc, 0) << build.out;
  EXPECT_NE(build.out.find("isomorphism: OK"), std::string::npos) << build.out;
  EXPECT_NE(build.out.find("312 edges"), std::string::npos) << build.out;

  const std::string file = dir.path() + "/graph_n3.edges";
  const auto check = run_cli("check --file " + file);
  EXPECT_EQ(check.rc, 0) << check.out;
  EXPECT_NE(check.out.find("checksum OK"), std::string::npos) << check.out;

  // One flipped digit must fail the re-read with the checksum exit code.
  std::string text = slurp(file);
  const auto pos = text.find("\n000 001 1");
  ASSERT_NE(pos, std::string::npos);
  text[pos + 3] = '1';
  std::ofstream(file, std::ios::binary) << text;
  const auto corrupt = run_cli("check --file " + file);
  EXPECT_EQ(corrupt.rc, 3) << corrupt.out;
  EXPECT_NE(corrupt.out.find("checksum"), std::string::npos) << corrupt.out;
}

TEST_F(Cli, BuildLevelOneWritesTheSixCycle) {
  TempDir dir;
  const auto build = run_cli("--out " + dir.path() + " build --level 1");
  EXPECT_EQ(build.rc, 0) << build.out;
  const std::string text = slurp(dir.path() + "/graph_n1.edges");
  EXPECT_NE(text.find("{\"level\":1,\"vertices\":6,\"edges\":6}\n"), std::string::npos);
  EXPECT_NE(text.find("0 1 1\n0 5 1\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n"), std::string::npos);
}

TEST_F(Cli, ResourceCapsExitWithCodeTwo) {
  TempDir dir;
  const auto deep = run_cli("--out " + dir.path() + " build --level 10");
  EXPECT_EQ(deep.rc, 2) << deep.out;
  EXPECT_NE(deep.out.find("resource"), std::string::npos) << deep.out;
  const auto walk = run_cli("--out " + dir.path() + " walk --level 7 --t-max 10");
  EXPECT_EQ(walk.rc, 2) << walk.out;
}

TEST_F(Cli, DistancesTableCarriesZeroResiduals) {
  TempDir dir;
  const auto res = run_cli("--out " + dir.path() + " distances --max-level 4");
  EXPECT_EQ(res.rc, 0) << res.out;
  EXPECT_NE(res.out.find("n=4: radius 44, diameter 68"), std::string::npos) << res.out;

  std::ifstream in(dir.path() + "/distances.csv");
  std::string line;
  std::getline(in, line);  // header
  const std::string diameters[] = {"3", "10", "28", "68"};
  for (int n = 1; n <= 4; ++n) {
    ASSERT_TRUE(static_cast<bool>(std::getline(in, line)));
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    EXPECT_EQ(cell, std::to_string(n));
    for (int skip = 0; skip < 3; ++skip) std::getline(row, cell, ',');
    EXPECT_EQ(cell, diameters[n - 1]) << line;
    // Radius and diameter residual columns (after the decomposition block).
    std::istringstream row2(line);
    std::string cells[17];
    for (auto& c : cells)
      if (!std::getline(row2, c, ',')) break;
    EXPECT_EQ(cells[10], "0") << line;
    EXPECT_EQ(cells[11], "0") << line;
  }
}

TEST_F(Cli, SpectrumEmitsHeadlineTablesAndReport) {
  TempDir dir;
  const auto res = run_cli("--out " + dir.path() + " spectrum --level 3 --k 8 --seed 7");
  EXPECT_EQ(res.rc, 0) << res.out;
  EXPECT_NE(res.out.find("lambda_4/lambda_2 = 3.2"), std::string::npos) << res.out;
  for (const char* name :
       {"eigen_n3.csv", "counting_n3.csv", "gaps_n3.csv", "spectrum_n3.json",
        "manifest_spectrum.json"})
    EXPECT_TRUE(fs::exists(fs::path(dir.path()) / name)) << name;
  const std::string eigen_text = slurp(dir.path() + "/eigen_n3.csv");
  EXPECT_EQ(eigen_text.rfind("j,eigenvalue,renormalized\n1,0,0\n", 0), 0u) << eigen_text;
  const std::string manifest = slurp(dir.path() + "/manifest_spectrum.json");
  EXPECT_NE(manifest.find("\"command\": \"spectrum\""), std::string::npos);
  EXPECT_NE(manifest.find("\"wall_time_seconds\""), std::string::npos);
  EXPECT_NE(manifest.find("\"seed\": 7"), std::string::npos);
}

TEST_F(Cli, SeededWalkRerunsAreByteIdentical) {
  TempDir a, b;
  const std::string args = " walk --level 2 --t-max 50 --trials 20000 --seed 99 --fit-lo 4";
  const auto ra = run_cli("--out " + a.path() + args);
  const auto rb = run_cli("--out " + b.path() + args);
  EXPECT_EQ(ra.rc, 0) << ra.out;
  EXPECT_EQ(rb.rc, 0) << rb.out;
  EXPECT_NE(ra.out.find("evidence"), std::string::npos) << ra.out;
  for (const char* name : {"walk_n2_boundary.csv", "walk_n2_interior.csv", "walk_n2.json"}) {
    const std::string fa = slurp(fs::path(a.path()) / name);
    EXPECT_FALSE(fa.empty()) << name;
    EXPECT_EQ(fa, slurp(fs::path(b.path()) / name)) << name;
  }
}

TEST_F(Cli, RhoGridHasOneRowPerIndexWithBlankFirstRow) {
  TempDir dir;
  const auto res = run_cli("--out " + dir.path() + " rho --max-level 3 --k 6");
  EXPECT_EQ(res.rc, 0) << res.out;
  EXPECT_NE(res.out.find("rho = 1.3"), std::string::npos) << res.out;
  std::ifstream in(dir.path() + "/rho_grid.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "j,n1,n2");
  std::getline(in, line);
  EXPECT_EQ(line, "1,,");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
}

TEST_F(Cli, CoordsEmitOneColumnPerIndex) {
  TempDir dir;
  const auto res = run_cli("--out " + dir.path() + " coords --level 2 --indices 2,3");
  EXPECT_EQ(res.rc, 0) << res.out;
  std::ifstream in(dir.path() + "/coords_n2.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "phi_2,phi_3");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 36);
}

TEST_F(Cli, JsonFormatWrapsTables) {
  TempDir dir;
  const auto res = run_cli("--out " + dir.path() + " --format json distances --max-level 2");
  EXPECT_EQ(res.rc, 0) << res.out;
  const std::string text = slurp(dir.path() + "/distances.json");
  EXPECT_NE(text.find("\"columns\""), std::string::npos);
  EXPECT_NE(text.find("\"rows\""), std::string::npos);
  EXPECT_FALSE(fs::exists(fs::path(dir.path()) / "distances.csv"));
}

TEST_F(Cli, BadArgumentsExitWithCodeFour) {
  TempDir dir;
  EXPECT_EQ(run_cli("--out " + dir.path() + " spectrum --level 0 --k 4").rc, 4);
  EXPECT_EQ(run_cli("--out " + dir.path() + " coords --level 2 --indices 1").rc, 4);
  EXPECT_EQ(run_cli("--out " + dir.path() + " nosuchcommand").rc, 4);
  EXPECT_EQ(run_cli("--out " + dir.path() + " rho --max-level 1 --k 5").rc, 4);

  // A fit window too narrow for a slope is reported, not fatal: the walk
  // data itself is still the product.
  const auto narrow = run_cli("--out " + dir.path() + " walk --level 2 --t-max 10 --fit-lo 9");
  EXPECT_EQ(narrow.rc, 0) << narrow.out;
  EXPECT_NE(narrow.out.find("no fit"), std::string::npos) << narrow.out;
}

}  // namespace
