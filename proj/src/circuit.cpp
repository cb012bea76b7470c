#include "spin_epsilon/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "spin_epsilon/errors.hpp"

namespace spin_epsilon {

static_assert(std::tuple_size_v<Amplitude2> == 2, "memory is a single qubit");

Matrix2 rotation(double angle) noexcept {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{{c, -s}, {s, c}}};
}

Amplitude2 apply_gate(const Matrix2& m, const Amplitude2& v) noexcept {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

StepUnitaries build_step_unitaries(const QuantumModel& model) {
  StepUnitaries su;
  su.theta0 = std::atan2(model.amp[0][1], model.amp[0][0]);
  su.theta1 = std::atan2(model.amp[1][1], model.amp[1][0]);
  const double r0 = std::hypot(model.amp[0][0], model.amp[0][1]);
  const double r1 = std::hypot(model.amp[1][0], model.amp[1][1]);
  if (r0 > 0.0 && r1 > 0.0) {
    const double a0 = model.amp[0][0] / r0, b0 = model.amp[0][1] / r0;
    const double a1 = model.amp[1][0] / r1, b1 = model.amp[1][1] / r1;
    const double cu = a0 * a1 + b0 * b1;
    const double sd = a0 * b1 - b0 * a1;
    su.V = {{{a0, -b0}, {b0, a0}}};
    su.U = {{{cu, -sd}, {sd, cu}}};
  } else {
    su.V = rotation(su.theta0);
    su.U = rotation(su.theta1 - su.theta0);
  }
  return su;
}

Amplitude2 prepared_state(const StepUnitaries& su, std::size_t index) noexcept {
  Amplitude2 state = apply_gate(su.V, {1.0, 0.0});
  if (index == 1) state = apply_gate(su.U, state);
  return state;
}

TwoQubitState circuit_step(const StepUnitaries& su, const Amplitude2& memory) noexcept {
  const Amplitude2 ancilla = apply_gate(su.V, {1.0, 0.0});
  const Amplitude2 rotated = apply_gate(su.U, ancilla);
  // |k>|anc> -> |k> U^k |anc>
  return {memory[0] * ancilla[0], memory[0] * ancilla[1], memory[1] * rotated[0], memory[1] * rotated[1]};
}

namespace {

struct Outcome {
  double probability;
  Amplitude2 collapsed;
};

// Z-basis measurement of the emitted (first) qubit.
Outcome measure_emitted(const TwoQubitState& joint, std::size_t k) noexcept {
  const double x = joint[2 * k];
  const double y = joint[2 * k + 1];
  const double prob = x * x + y * y;
  if (!(prob > 0.0)) return {0.0, {0.0, 0.0}};
  const double norm = std::sqrt(prob);
  return {prob, {x / norm, y / norm}};
}

void check_start(std::size_t start) {
  if (start > 1) throw InvalidInput("start index must be 0 or 1");
}

}  // namespace

double BranchState::total_weight() const noexcept {
  double total = 0.0;
  for (const auto& b : branches) total += b.weight * b.weight;
  return total;
}

BranchState initial_branches(const StepUnitaries& su, std::size_t start) {
  check_start(start);
  BranchState state;
  state.branches.push_back(Branch{1.0, prepared_state(su, start), 0});
  return state;
}

BranchState advance(const StepUnitaries& su, const BranchState& state) {
  BranchState next;
  next.depth = state.depth + 1;
  next.branches.reserve(2 * state.branches.size());
  for (const auto& branch : state.branches) {
    const TwoQubitState joint = circuit_step(su, branch.memory);
    for (std::size_t k = 0; k < 2; ++k) {
      const Outcome outcome = measure_emitted(joint, k);
      if (outcome.probability == 0.0) continue;
      next.branches.push_back(
          Branch{branch.weight * std::sqrt(outcome.probability), outcome.collapsed, (branch.prefix << 1) | k});
    }
  }
  return next;
}

FutureDistribution exact_output_distribution(const StepUnitaries& su, std::size_t start, std::size_t L) {
  if (L < 1 || L > kMaxFutureLength) {
    throw SizeError("circuit depth must lie in [1, " + std::to_string(kMaxFutureLength) + "]");
  }
  BranchState state = initial_branches(su, start);
  for (std::size_t step = 0; step < L; ++step) {
    state = advance(su, state);
  }
  FutureDistribution out{L, std::vector<double>(std::size_t{1} << L, 0.0)};
  for (const auto& branch : state.branches) {
    out.probs[branch.prefix] = branch.weight * branch.weight;
  }
  return out;
}

SyncReport assert_synchronization(const StepUnitaries& su, const QuantumModel& model, std::size_t L, double tol) {
  SyncReport report;
  for (std::size_t start = 0; start < 2; ++start) {
    BranchState state = initial_branches(su, start);
    for (std::size_t depth = 1; depth <= L; ++depth) {
      state = advance(su, state);
      for (const auto& branch : state.branches) {
        const std::size_t emitted = branch.prefix & 1U;
        const double deviation = 1.0 - std::abs(overlap(branch.memory, model.amp[emitted]));
        report.worst_deviation = std::max(report.worst_deviation, deviation);
        if (deviation > tol && report.pass) {
          report.pass = false;
          FutureDistribution labeller{depth, {}};
          report.first_failure = "start " + std::to_string(start) + ", history " + labeller.label(branch.prefix) +
                                 ": memory deviates from |s_" + std::to_string(emitted) + "> by " +
                                 std::to_string(deviation);
        }
      }
    }
  }
  return report;
}

QuantumSampler::QuantumSampler(StepUnitaries su, std::size_t start, std::uint64_t seed)
    : su_(su), last_index_(start), rng_(seed) {
  check_start(start);
  memory_ = prepared_state(su_, start);
}

Symbol QuantumSampler::step() {
  const TwoQubitState joint = circuit_step(su_, memory_);
  const Outcome plus = measure_emitted(joint, 0);
  const Outcome minus = measure_emitted(joint, 1);
  const double p_plus = plus.probability / (plus.probability + minus.probability);
  const std::size_t k = uniform_(rng_) < p_plus ? 0 : 1;
  memory_ = k == 0 ? plus.collapsed : minus.collapsed;
  last_index_ = k;
  return static_cast<Symbol>(spin_of_index(k));
}

Trajectory QuantumSampler::run(std::size_t steps) {
  Trajectory out;
  out.symbols.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) out.symbols.push_back(step());
  out.final_state = last_index_;
  return out;
}

Trajectory sample_quantum_trajectory(const StepUnitaries& su, std::size_t start, std::size_t steps,
                                     std::uint64_t seed) {
  QuantumSampler sampler(su, start, seed);
  return sampler.run(steps);
}

}  // namespace spin_epsilon
