#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "spin_epsilon/classical_machine.hpp"
#include "spin_epsilon/ising.hpp"

namespace spin_epsilon {

inline constexpr std::size_t kMaxRingHalf = 10;

/// Exact Boltzmann law of a periodic ring of M = 2 n_half + 1 spins.
/// Bit k of a configuration index is the spin at site k (0 -> +1, 1 -> -1).
/// Nothing here touches the transfer matrix: every statistic is a direct sum
/// over configurations.
struct RingEnsemble {
  std::size_t n_half = 0;
  IsingParams params;
  std::vector<double> probs;

  std::size_t sites() const noexcept { return 2 * n_half + 1; }
};

/// probs[c] ∝ exp(-H(c)/T), H(c) = sum_k (-J x_k x_{k+1} - B x_k), normalized
/// with log-sum-exp. Throws SizeError unless 1 <= n_half <= 10.
RingEnsemble enumerate_ring(const IsingParams& params, std::size_t n_half);

/// P(x_site = +1).
double site_marginal(const RingEnsemble& ens, std::size_t site);

/// Joint law of the spins at `sites` (ring indices, taken mod M). The first
/// listed site is the most significant bit of the returned index.
std::vector<double> window_marginal(const RingEnsemble& ens, std::span<const long> sites);

/// P(x_1..x_L | x_0 = condition) with condition = +1 or -1.
/// Throws SizeError unless 1 <= L <= n_half.
FutureDistribution conditional_from_ring(const RingEnsemble& ens, Symbol condition, std::size_t L);

/// Sites -L..1 in the order used by markov_gap_of_window.
std::vector<long> markov_window_sites(std::size_t L);

/// Given the joint law of (x_{-L}, ..., x_0, x_1), the largest
/// |P(x_1 | x_0, x_{-1}..x_{-L}) - P(x_1 | x_0)| over all histories.
double markov_gap_of_window(std::span<const double> window, std::size_t L);

/// Finite-ring deviation from the Markov property. Throws SizeError unless
/// 1 <= L and L + 1 <= n_half.
double markov_gap(const RingEnsemble& ens, std::size_t L);

/// Wynn epsilon extrapolation of a scalar sequence to its limit; uses the
/// highest even column available. Stops early once consecutive entries agree
/// to round-off.
double wynn_epsilon(std::span<const double> sequence);

/// Entrywise wynn_epsilon over a sequence of equally sized tables.
std::vector<double> extrapolate_tables(const std::vector<std::vector<double>>& tables);

/// "site,p_plus" rows for every ring site.
void write_site_marginals_csv(std::ostream& out, const RingEnsemble& ens);

}  // namespace spin_epsilon
