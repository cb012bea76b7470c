#include "spin_epsilon/classical_machine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "spin_epsilon/errors.hpp"

namespace spin_epsilon {

namespace {

void check_state(std::size_t state) {
  if (state > 1) {
    throw InvalidInput("causal state index must be 0 or 1, got " + std::to_string(state));
  }
}

void check_length(std::size_t L) {
  if (L < 1 || L > kMaxFutureLength) {
    throw SizeError("future length must lie in [1, " + std::to_string(kMaxFutureLength) + "], got " +
                    std::to_string(L));
  }
}

}  // namespace

double FutureDistribution::sum() const noexcept {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

Symbol FutureDistribution::symbol_at(std::size_t index, std::size_t k) const noexcept {
  const std::size_t bit = (index >> (length - 1 - k)) & 1U;
  return static_cast<Symbol>(spin_of_index(bit));
}

std::string FutureDistribution::label(std::size_t index) const {
  std::string out(length, '+');
  for (std::size_t k = 0; k < length; ++k) {
    if (symbol_at(index, k) < 0) out[k] = '-';
  }
  return out;
}

FutureDistribution FutureDistribution::marginalize_last() const {
  if (length < 2) {
    throw SizeError("cannot marginalize a length-1 distribution");
  }
  FutureDistribution out{length - 1, std::vector<double>(probs.size() / 2, 0.0)};
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    out.probs[idx >> 1] += probs[idx];
  }
  return out;
}

double max_abs_difference(const FutureDistribution& a, const FutureDistribution& b) {
  if (a.length != b.length || a.probs.size() != b.probs.size()) {
    throw InvalidInput("distribution lengths differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.probs.size(); ++i) {
    worst = std::max(worst, std::abs(a.probs[i] - b.probs[i]));
  }
  return worst;
}

void write_csv(std::ostream& out, const FutureDistribution& dist) {
  out << "string,probability\n";
  char buf[64];
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", dist.probs[i]);
    out << dist.label(i) << ',' << buf << '\n';
  }
}

std::size_t causal_state_of(const std::vector<Symbol>& past) {
  if (past.empty()) {
    throw InvalidInput("causal state of an empty past is undefined");
  }
  return past.back() > 0 ? 0 : 1;
}

double binary_entropy(double p) noexcept {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double statistical_complexity(const TransitionMatrix& tm) {
  if (tm.rows_coincide()) {
    return 0.0;
  }
  double h = 0.0;
  for (double pi : tm.p) {
    if (pi > 0.0) h -= pi * std::log2(pi);
  }
  return h;
}

FutureDistribution future_distribution(const TransitionMatrix& tm, std::size_t start, std::size_t L) {
  check_state(start);
  check_length(L);
  FutureDistribution out{L, std::vector<double>(std::size_t{1} << L)};
  for (std::size_t idx = 0; idx < out.probs.size(); ++idx) {
    std::size_t state = start;
    double prob = 1.0;
    for (std::size_t k = 0; k < L; ++k) {
      const std::size_t next = (idx >> (L - 1 - k)) & 1U;
      prob *= tm.t[state][next];
      state = next;
    }
    out.probs[idx] = prob;
  }
  return out;
}

double classical_fidelity(const TransitionMatrix& tm, std::size_t L) {
  const auto from0 = future_distribution(tm, 0, L);
  const auto from1 = future_distribution(tm, 1, L);
  double f = 0.0;
  for (std::size_t i = 0; i < from0.probs.size(); ++i) {
    f += std::sqrt(from0.probs[i] * from1.probs[i]);
  }
  return f;
}

double single_step_fidelity(const TransitionMatrix& tm) noexcept {
  return std::sqrt(tm.t[0][0] * tm.t[1][0]) + std::sqrt(tm.t[0][1] * tm.t[1][1]);
}

void write_symbols(std::ostream& out, const std::vector<Symbol>& symbols) {
  if (symbols.empty()) return;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out << ' ';
    out << (symbols[i] > 0 ? "+1" : "-1");
  }
  out << '\n';
}

EpsilonMachine::EpsilonMachine(TransitionMatrix tm, std::size_t start, std::uint64_t seed)
    : tm_(tm), state_(start), rng_(seed) {
  check_state(start);
}

Symbol EpsilonMachine::step() {
  const std::size_t next = uniform_(rng_) < tm_.t[state_][0] ? 0 : 1;
  state_ = next;
  return static_cast<Symbol>(spin_of_index(next));
}

Trajectory EpsilonMachine::run(std::size_t steps) {
  Trajectory out;
  out.symbols.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    out.symbols.push_back(step());
  }
  out.final_state = state_;
  return out;
}

Trajectory sample_trajectory(const TransitionMatrix& tm, std::size_t start, std::size_t steps, std::uint64_t seed) {
  EpsilonMachine machine(tm, start, seed);
  return machine.run(steps);
}

}  // namespace spin_epsilon
