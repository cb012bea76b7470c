#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "spin_epsilon/ising.hpp"
#include "spin_epsilon/sweep.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
namespace golden = spin_epsilon::testing::golden;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(SPIN_EPSILON_CLI) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 1 << 16> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "spin_epsilon_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<int> parse_symbols(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  int v = 0;
  while (in >> v) out.push_back(v);
  return out;
}

// Per-state next-symbol counts (2-grams grouped by their first symbol).
std::array<std::array<double, 2>, 2> bigram_counts(const std::vector<int>& s) {
  std::array<std::array<double, 2>, 2> c{};
  for (std::size_t i = 1; i < s.size(); ++i) c[s[i - 1] > 0 ? 0 : 1][s[i] > 0 ? 0 : 1] += 1;
  return c;
}

}  // namespace

TEST(Cli, ComplexitySymmetricChain) {
  const auto r = run("complexity --J 1 --B 0 --T 1 --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["C_mu_bits"].get<double>(), 1.0);
  EXPECT_NEAR(j["C_q_bits"].get<double>(), golden::kSymCq, 1e-12);
}

TEST(Cli, ComplexityHotChain) {
  const auto finite = nlohmann::json::parse(run("complexity --J 1 --B 0 --T 1e6 --format json").out);
  EXPECT_LT(finite["C_q_bits"].get<double>(), 1e-9);
  EXPECT_EQ(finite["C_mu_bits"].get<double>(), 1.0);  // rows still differ by ~1e-6

  const auto limit = nlohmann::json::parse(run("complexity --J 1 --B 0 --T inf --format json").out);
  EXPECT_EQ(limit["C_mu_bits"].get<double>(), 0.0);
  EXPECT_EQ(limit["C_q_bits"].get<double>(), 0.0);
  EXPECT_TRUE(limit["ratio"].is_null());
}

TEST(Cli, ComplexityGoldenRow) {
  const auto r = run("complexity --J 1 --B 0.3 --T 2 --format csv");
  ASSERT_EQ(r.exit_code, 0);
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, spin_epsilon::kSweepCsvHeader);
  std::vector<double> v;
  std::istringstream fields(row);
  std::string tok;
  while (std::getline(fields, tok, ',')) v.push_back(std::stod(tok));
  ASSERT_EQ(v.size(), 13U);
  const double expected[] = {2.0, 1.0, 0.3, golden::kP0, golden::kP1, golden::kT00, golden::kT01,
                             golden::kT10, golden::kT11, golden::kOverlap, golden::kCmu, golden::kCq,
                             golden::kCmu / golden::kCq};
  for (std::size_t i = 0; i < 13; ++i) EXPECT_NEAR(v[i], expected[i], 1e-9) << "column " << i;
}

TEST(Cli, TextOutputIncludesJsonMirror) {
  const auto r = run("complexity --J 1 --B 0.3 --T 2");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("C_mu = "), std::string::npos);
  const auto last = r.out.substr(r.out.rfind('{'));
  EXPECT_TRUE(nlohmann::json::accept(last));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("complexity --J 1 --B 0 --T -1").exit_code, 2);
  EXPECT_EQ(run("complexity --T abc").exit_code, 2);
  EXPECT_EQ(run("complexity --J nan").exit_code, 2);
  EXPECT_EQ(run("complexity --bogus 3").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("sweep --t-min 0 --t-max 1").exit_code, 2);
  EXPECT_EQ(run("sweep --points 1").exit_code, 2);
  EXPECT_EQ(run("simulate --start 2 --steps 3").exit_code, 2);
  EXPECT_EQ(run("--help").exit_code, 0);
}

TEST(Cli, SweepIsByteDeterministic) {
  const auto a = scratch("a.csv");
  const auto b = scratch("b.csv");
  const std::string flags = "sweep --J 1 --B 0.3 --t-min 0.05 --t-max 100 --points 200 --spacing log --out ";
  ASSERT_EQ(run(flags + a.string()).exit_code, 0);
  ASSERT_EQ(run("sweep --J 1 --B 0.3 --t-min 0.05 --t-max 100 --points 200 --spacing log --out " + b.string())
                .exit_code,
            0);
  const auto text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  EXPECT_EQ(text.substr(0, text.find('\n')), "T,J,B,p0,p1,T00,T01,T10,T11,fidelity,C_mu_bits,C_q_bits,ratio");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 201);
}

TEST(Cli, SweepFreeChainAllZero) {
  const auto r = run("sweep --J 0 --B 0 --t-min 0.1 --t-max 10 --points 25");
  ASSERT_EQ(r.exit_code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> cols;
    std::istringstream f(line);
    std::string tok;
    while (std::getline(f, tok, ',')) cols.push_back(tok);
    ASSERT_GE(cols.size(), 12U);
    EXPECT_EQ(std::stod(cols[10]), 0.0);
    EXPECT_EQ(std::stod(cols[11]), 0.0);
    ++rows;
  }
  EXPECT_EQ(rows, 25);
}

TEST(Cli, SweepRatioGrowsAtHighTemperature) {
  const auto r = run("sweep --J 1 --B 0.3 --t-min 10 --t-max 10000 --points 4 --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto rows = nlohmann::json::parse(r.out);
  ASSERT_EQ(rows.size(), 4U);
  EXPECT_EQ(rows[0]["T"].get<double>(), 10.0);
  EXPECT_EQ(rows[3]["T"].get<double>(), 10000.0);
  EXPECT_GE(rows[3]["ratio"].get<double>(), 10.0 * rows[0]["ratio"].get<double>());
}

TEST(Cli, SweepUnwritablePath) {
  EXPECT_EQ(run("sweep --out /nonexistent-dir/x.csv").exit_code, 2);
}

TEST(Cli, ConfigFileBelowFlags) {
  const auto cfg = scratch("params.ini");
  std::ofstream(cfg) << "J = 0.5\nB = 0.1\nT = 3\n";
  const auto r = run("complexity --config " + cfg.string() + " --B 0.2 --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["J"].get<double>(), 0.5);
  EXPECT_EQ(j["B"].get<double>(), 0.2);
  EXPECT_EQ(j["T"].get<double>(), 3.0);
}

TEST(Cli, SimulateZeroSteps) {
  for (const char* backend : {"classical", "quantum"}) {
    const auto r = run(std::string("simulate --backend ") + backend + " --steps 0");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Cli, SimulateBackendsAgreeOnBigrams) {
  const std::string common = " --J 1 --B 0.3 --T 2 --steps 1000000 --start 0";
  const auto classical = parse_symbols(run("simulate --backend classical --seed 1" + common).out);
  const auto quantum = parse_symbols(run("simulate --backend quantum --seed 2" + common).out);
  ASSERT_EQ(classical.size(), 1000000U);
  ASSERT_EQ(quantum.size(), 1000000U);
  const auto a = bigram_counts(classical);
  const auto b = bigram_counts(quantum);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const double na = a[i][0] + a[i][1];
    const double nb = b[i][0] + b[i][1];
    for (std::size_t j = 0; j < 2; ++j) {
      const double pooled = (a[i][j] + b[i][j]) / (na + nb);
      const double ea = na * pooled;
      const double eb = nb * pooled;
      chi2 += (a[i][j] - ea) * (a[i][j] - ea) / ea + (b[i][j] - eb) * (b[i][j] - eb) / eb;
    }
  }
  // chi-square with 2 degrees of freedom, alpha = 0.001
  EXPECT_LT(chi2, 13.815510557964274);
}

TEST(Cli, ForcedStartFollowsRow) {
  const auto tm = spin_epsilon::transition_matrix(spin_epsilon::IsingParams::make(1.0, 0.3, 2.0));
  const int runs = 300;
  int plus = 0;
  for (int seed = 1; seed <= runs; ++seed) {
    const auto s = parse_symbols(run("simulate --J 1 --B 0.3 --T 2 --steps 1 --start 1 --seed " + std::to_string(seed)).out);
    ASSERT_EQ(s.size(), 1U);
    plus += s[0] > 0;
  }
  const double p = tm.t[1][0];
  EXPECT_LT(std::abs(plus / double(runs) - p), 3.0 * std::sqrt(p * (1 - p) / runs));
}

TEST(Cli, Tmax) {
  const auto interior = nlohmann::json::parse(run("tmax --J 1 --B 0.3 --t-min 0.05 --t-max 100 --tol 1e-4 --format json").out);
  EXPECT_TRUE(interior["interior"].get<bool>());
  EXPECT_NEAR(interior["T_max"].get<double>(), golden::kTmax, 5e-4);

  const auto flat = run("tmax --J 0 --B 0");
  EXPECT_EQ(flat.exit_code, 0);
  EXPECT_NE(flat.out.find("boundary result"), std::string::npos);

  const auto symmetric = nlohmann::json::parse(run("tmax --J 1 --B 0 --format json").out);
  EXPECT_FALSE(symmetric["interior"].get<bool>());
}

TEST(Cli, VerifyQuick) {
  const auto r = run("verify --level quick --seed 42");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(r.out.find("[FAIL]"), std::string::npos);
  EXPECT_NE(r.out.find("PASS: 10 checks"), std::string::npos);
}
