#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "spin_epsilon/ising.hpp"

namespace spin_epsilon {

/// Emitted spin, +1 or -1.
using Symbol = std::int8_t;

inline constexpr std::size_t kMaxFutureLength = 20;

/// Exact probability table over the 2^L spin strings x_1..x_L.
///
/// String index: x_1 is the most significant bit, bit value 0 is spin +1.
/// Dropping the last symbol is therefore `index >> 1`.
struct FutureDistribution {
  std::size_t length = 0;
  std::vector<double> probs;

  double sum() const noexcept;
  /// '+'/'-' rendering of string `index`, x_1 first.
  std::string label(std::size_t index) const;
  /// Symbol at position k (0-based) of string `index`.
  Symbol symbol_at(std::size_t index, std::size_t k) const noexcept;
  /// Table for length L-1 obtained by summing over the last symbol.
  FutureDistribution marginalize_last() const;
};

/// Largest absolute entry difference; throws InvalidInput on length mismatch.
double max_abs_difference(const FutureDistribution& a, const FutureDistribution& b);

/// Writes "string,probability" CSV rows with a header line.
void write_csv(std::ostream& out, const FutureDistribution& dist);

/// Causal state reached after the given past: s_0 iff the last spin is +1.
/// Throws InvalidInput on an empty past.
std::size_t causal_state_of(const std::vector<Symbol>& past);

/// Shannon entropy (bits) of the stationary causal-state distribution.
/// Returns 0 when both causal states predict identical futures within 1e-12,
/// i.e. the two states merge into one.
double statistical_complexity(const TransitionMatrix& tm);

/// Binary entropy in bits with 0 log 0 = 0.
double binary_entropy(double p) noexcept;

/// P(x_1..x_L | start) as a product of transition entries, state updated
/// unifilarly by each emitted symbol. Throws SizeError unless 1 <= L <= 20.
FutureDistribution future_distribution(const TransitionMatrix& tm, std::size_t start, std::size_t L);

/// Bhattacharyya fidelity sum_x sqrt(P(x|s_0) P(x|s_1)) over length-L futures.
double classical_fidelity(const TransitionMatrix& tm, std::size_t L);

/// sqrt(T00 T10) + sqrt(T01 T11), the single-step value every L reduces to.
double single_step_fidelity(const TransitionMatrix& tm) noexcept;

struct Trajectory {
  std::vector<Symbol> symbols;
  std::size_t final_state = 0;
};

/// Writes symbols as a single space-separated line of +1/-1 tokens.
void write_symbols(std::ostream& out, const std::vector<Symbol>& symbols);

/// Stateful classical simulator. Owns its RNG; one instance per worker.
class EpsilonMachine {
 public:
  EpsilonMachine(TransitionMatrix tm, std::size_t start, std::uint64_t seed);

  const TransitionMatrix& transitions() const noexcept { return tm_; }
  std::size_t state() const noexcept { return state_; }

  /// Emits one symbol and moves to the causal state it names.
  Symbol step();
  Trajectory run(std::size_t steps);

 private:
  TransitionMatrix tm_;
  std::size_t state_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

Trajectory sample_trajectory(const TransitionMatrix& tm, std::size_t start, std::size_t steps, std::uint64_t seed);

}  // namespace spin_epsilon
