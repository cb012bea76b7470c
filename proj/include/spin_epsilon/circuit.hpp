#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spin_epsilon/classical_machine.hpp"
#include "spin_epsilon/quantum_machine.hpp"

namespace spin_epsilon {

/// Real planar rotations driving one step of the sampling circuit.
/// V maps |0> to |s0>; U maps |s0> to |s1>.
struct StepUnitaries {
  Matrix2 V{};
  Matrix2 U{};
  double theta0 = 0.0;
  double theta1 = 0.0;
};

Matrix2 rotation(double angle) noexcept;
Amplitude2 apply_gate(const Matrix2& m, const Amplitude2& v) noexcept;

StepUnitaries build_step_unitaries(const QuantumModel& model);

/// Memory qubit state |s_index> prepared as U^index V |0>.
Amplitude2 prepared_state(const StepUnitaries& su, std::size_t index) noexcept;

/// Two-qubit register (emitted qubit (x) ancilla), amplitude index 2*k + a.
using TwoQubitState = std::array<double, 4>;

/// One circuit step before measurement: ancilla <- V|0>, then controlled-U
/// with the memory qubit as control. Returns the joint state.
TwoQubitState circuit_step(const StepUnitaries& su, const Amplitude2& memory) noexcept;

struct Branch {
  double weight = 0.0;  // probability amplitude of this measurement history
  Amplitude2 memory{};  // post-measurement ancilla, the next memory qubit
  std::size_t prefix = 0;  // emitted string, first symbol most significant
};

/// Exact superposition of measurement histories at a fixed depth.
struct BranchState {
  std::size_t depth = 0;
  std::vector<Branch> branches;

  double total_weight() const noexcept;  // sum of squared weights
};

/// Every measurement history of one more step. Zero-probability outcomes are dropped.
BranchState advance(const StepUnitaries& su, const BranchState& state);

BranchState initial_branches(const StepUnitaries& su, std::size_t start);

/// Born-rule distribution over emitted strings of length L. Throws SizeError
/// unless 1 <= L <= 20.
FutureDistribution exact_output_distribution(const StepUnitaries& su, std::size_t start, std::size_t L);

struct SyncReport {
  bool pass = true;
  double worst_deviation = 0.0;  // max 1 - |<memory|s_j>| over checked branches
  std::optional<std::string> first_failure;
};

/// Checks that every post-measurement memory equals |s_j> (up to sign) for
/// the emitted symbol index j, at every depth up to L and from both starts.
SyncReport assert_synchronization(const StepUnitaries& su, const QuantumModel& model, std::size_t L,
                                  double tol = 1e-12);

/// Stateful single-branch walk through the circuit with its own RNG.
class QuantumSampler {
 public:
  QuantumSampler(StepUnitaries su, std::size_t start, std::uint64_t seed);

  Symbol step();
  Trajectory run(std::size_t steps);
  const Amplitude2& memory() const noexcept { return memory_; }

 private:
  StepUnitaries su_;
  Amplitude2 memory_{};
  std::size_t last_index_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

Trajectory sample_quantum_trajectory(const StepUnitaries& su, std::size_t start, std::size_t steps,
                                     std::uint64_t seed);

}  // namespace spin_epsilon
