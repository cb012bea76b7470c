// spin-epsilon: classical and quantum statistical complexity of the 1D Ising chain.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "spin_epsilon/circuit.hpp"
#include "spin_epsilon/classical_machine.hpp"
#include "spin_epsilon/errors.hpp"
#include "spin_epsilon/quantum_machine.hpp"
#include "spin_epsilon/sweep.hpp"
#include "spin_epsilon/verify.hpp"

namespace se = spin_epsilon;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double J = 1.0;
  double B = 0.0;
  std::string T = "1";
  double t_min = 0.05;
  double t_max = 100.0;
  std::size_t points = 200;
  std::string spacing = "log";
  std::uint64_t seed = 42;
  std::string out = "-";
  std::string format = "text";
};

se::IsingParams params_from(const Options& o) {
  if (o.T == "inf" || o.T == "infinity") return se::IsingParams::infinite_temperature(o.J, o.B);
  std::size_t used = 0;
  double T = 0.0;
  try {
    T = std::stod(o.T, &used);
  } catch (const std::exception&) {
    throw UsageError("--T expects a number or 'inf', got '" + o.T + "'");
  }
  if (used != o.T.size()) throw UsageError("--T expects a number or 'inf', got '" + o.T + "'");
  return se::IsingParams::make(o.J, o.B, T);
}

// Opens --out, or returns std::cout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish(const std::string& path) {
    stream().flush();
    if (!stream()) throw std::ios_base::failure("write to '" + path + "' failed");
  }

 private:
  std::ofstream file_;
};

void print_row_text(const se::SweepRow& row) {
  std::printf("T = %.17g  J = %.17g  B = %.17g\n", row.T, row.J, row.B);
  std::printf("stationary p = (%.17g, %.17g)\n", row.p0, row.p1);
  std::printf("transitions  = [[%.17g, %.17g], [%.17g, %.17g]]\n", row.T00, row.T01, row.T10, row.T11);
  std::printf("overlap <s0|s1> = %.17g\n", row.fidelity);
  std::printf("C_mu = %.17g bits\n", row.c_mu);
  std::printf("C_q  = %.17g bits\n", row.c_q);
  if (row.ratio) {
    std::printf("C_mu / C_q = %.17g\n", *row.ratio);
  } else {
    std::printf("C_mu / C_q = (undefined, C_q below %.0e)\n", se::kRatioFloor);
  }
}

int cmd_complexity(const Options& o) {
  const auto row = se::compute_row(params_from(o));
  se::check_row(row);
  if (o.format == "csv") {
    std::cout << se::kSweepCsvHeader << '\n' << se::format_csv_row(row) << '\n';
  } else if (o.format == "json") {
    std::cout << se::to_json(row).dump() << '\n';
  } else {
    print_row_text(row);
    std::cout << se::to_json(row).dump() << '\n';
  }
  return 0;
}

int cmd_sweep(const Options& o) {
  const auto spacing = o.spacing == "linear" ? se::Spacing::linear : se::Spacing::log;
  const auto temps = se::temperature_grid(o.t_min, o.t_max, o.points, spacing);
  const auto rows = se::run_sweep(o.J, o.B, temps, se::worker_count());
  for (const auto& row : rows) se::check_row(row);

  Output out(o.out);
  if (o.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) arr.push_back(se::to_json(row));
    out.stream() << arr.dump(2) << '\n';
  } else {
    se::write_sweep_csv(out.stream(), rows);
  }
  out.finish(o.out);

  const auto& peak = rows[se::argmax_cq(rows)];
  std::fprintf(stderr, "sweep: %zu points, grid argmax C_q at T = %.17g (C_q = %.17g bits, C_mu = %.17g bits)\n",
               rows.size(), peak.T, peak.c_q, peak.c_mu);
  return 0;
}

int cmd_simulate(const Options& o, const std::string& backend, std::size_t steps, std::size_t start) {
  const auto tm = se::transition_matrix(params_from(o));
  se::Trajectory traj;
  if (backend == "quantum") {
    const auto su = se::build_step_unitaries(se::build_quantum_model(tm));
    traj = se::sample_quantum_trajectory(su, start, steps, o.seed);
  } else {
    traj = se::sample_trajectory(tm, start, steps, o.seed);
  }
  Output out(o.out);
  se::write_symbols(out.stream(), traj.symbols);
  out.finish(o.out);
  return 0;
}

int cmd_tmax(const Options& o, double tol) {
  const auto result = se::find_tmax(o.J, o.B, o.t_min, o.t_max, tol);
  if (o.format == "json") {
    nlohmann::json j = {{"J", o.J},
                        {"B", o.B},
                        {"T_max", result.t_max},
                        {"C_q_bits", result.cq_max},
                        {"C_mu_bits", result.cmu_at_t_max},
                        {"interior", result.interior},
                        {"unimodal", result.unimodal}};
    std::cout << j.dump() << '\n';
    return 0;
  }
  std::printf("T_max = %.17g\nC_q(T_max) = %.17g bits\nC_mu(T_max) = %.17g bits\n", result.t_max, result.cq_max,
              result.cmu_at_t_max);
  if (!result.interior) {
    std::printf("boundary result: no interior maximum of C_q in [%.17g, %.17g]\n", o.t_min, o.t_max);
  }
  if (!result.unimodal) {
    std::fprintf(stderr, "warning: C_q profile is not unimodal on the scan grid; reporting the grid argmax\n");
  }
  return 0;
}

int cmd_verify(const std::string& level, std::uint64_t seed) {
  se::VerifyOptions options;
  options.level = level == "full" ? se::VerifyLevel::full : se::VerifyLevel::quick;
  options.seed = seed;
  const auto results = se::run_verification(options);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %s (%.2fs): %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("%s: %zu checks\n", all ? "PASS" : "FAIL", results.size());
  return all ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and quantum statistical complexity of the 1D Ising chain"};
  app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--J", o.J, "Coupling strength")->capture_default_str();
  app.add_option("--B", o.B, "External field")->capture_default_str();
  app.add_option("--T", o.T, "Temperature (k_B = 1), or 'inf'")->capture_default_str();
  app.add_option("--t-min", o.t_min, "Lower end of the temperature range")->capture_default_str();
  app.add_option("--t-max", o.t_max, "Upper end of the temperature range")->capture_default_str();
  app.add_option("--points", o.points, "Sweep grid points")->capture_default_str()->check(CLI::Range(2, 1000000));
  app.add_option("--spacing", o.spacing, "Sweep grid spacing")
      ->capture_default_str()
      ->check(CLI::IsMember({"linear", "log"}));
  app.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", o.out, "Output path, '-' for stdout")->capture_default_str();
  app.add_option("--format", o.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "csv", "json"}));

  auto* complexity = app.add_subcommand("complexity", "C_mu and C_q at one (J, B, T)");
  auto* sweep = app.add_subcommand("sweep", "C_mu and C_q over a temperature grid");

  auto* simulate = app.add_subcommand("simulate", "Sample a spin trajectory");
  std::string backend = "classical";
  std::size_t steps = 0;
  std::size_t start = 0;
  simulate->add_option("--backend", backend, "Sampler")
      ->capture_default_str()
      ->check(CLI::IsMember({"classical", "quantum"}));
  simulate->add_option("--steps", steps, "Number of symbols")->capture_default_str();
  simulate->add_option("--start", start, "Initial causal state (0: last spin +1, 1: last spin -1)")
      ->capture_default_str()
      ->check(CLI::IsMember({0, 1}));

  auto* tmax = app.add_subcommand("tmax", "Temperature maximizing C_q");
  double tol = 1e-4;
  tmax->add_option("--tol", tol, "Refinement bracket width")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  std::string level = "quick";
  verify->add_option("--level", level, "Suite size")->capture_default_str()->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*complexity) return cmd_complexity(o);
    if (*sweep) return cmd_sweep(o);
    if (*simulate) return cmd_simulate(o, backend, steps, start);
    if (*tmax) return cmd_tmax(o, tol);
    if (*verify) return cmd_verify(level, o.seed);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
  } catch (const se::InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
  } catch (const se::DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
  } catch (const se::SizeError& e) {
    std::fprintf(stderr, "size error: %s\n", e.what());
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "invariant violated: %s\n", e.what());
  }
  return kExitUsage;
}
