#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "spin_epsilon/ising.hpp"
#include "spin_epsilon/quantum_machine.hpp"

namespace spin_epsilon {

/// Outcome of one verification check. `detail` carries the measured numbers
/// on success and the first counterexample on failure.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Quantum encoding under test. Swappable so mutated encodings can be
/// shown to fail.
using ModelBuilder = std::function<QuantumModel(const TransitionMatrix&)>;

/// Random (J, B, T) with J, B uniform in [-3, 3] and T log-uniform in [0.05, 100].
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}
  IsingParams next();

 private:
  std::mt19937_64 rng_;
};

struct OracleConvergence {
  std::vector<std::size_t> n_halves;
  std::vector<double> table_error;  // max entry error vs transfer matrix, per n_half
  std::vector<double> gap;          // markov_gap per n_half
  double extrapolated_error = 0.0;  // Wynn limit of the ring tables vs transfer matrix
  double extrapolated_gap = 0.0;    // gap of the Wynn-extrapolated window law
};

/// Ring statistics for each listed n_half (ascending) with conditional
/// window L and Markov history `gap_history`. The extrapolation uses every
/// ring size from the first to the last listed n_half.
OracleConvergence oracle_convergence(const IsingParams& params, std::span<const std::size_t> n_halves,
                                     std::size_t L, std::size_t gap_history);

CheckResult check_oracle_convergence(const IsingParams& params, std::span<const std::size_t> n_halves,
                                     double error_tol, double gap_tol);
CheckResult check_fidelity_saturation(std::size_t draws, std::uint64_t seed, const ModelBuilder& builder);
CheckResult check_fidelity_length_independence(std::size_t draws, std::uint64_t seed);
CheckResult check_circuit_born_rule(std::size_t draws, std::size_t max_length, std::uint64_t seed,
                                    const ModelBuilder& builder);
CheckResult check_synchronization(std::size_t draws, std::size_t depth, std::uint64_t seed,
                                  const ModelBuilder& builder);
CheckResult check_entropy_monotonicity(std::size_t grid);
CheckResult check_sweep_shape();
CheckResult check_high_temperature();
CheckResult check_degenerate_limits();

enum class VerifyLevel { quick, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::quick;
  std::uint64_t seed = 42;
  ModelBuilder builder = build_quantum_model;
};

/// Runs every check sequentially in a fixed order.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace spin_epsilon
