#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "spin_epsilon/ising.hpp"

namespace spin_epsilon {

using Amplitude2 = std::array<double, 2>;

double overlap(const Amplitude2& a, const Amplitude2& b) noexcept;

/// Optimal two-state quantum encoding of the chain's causal states:
///   |s_i> = sqrt(T_i0) |0> + sqrt(T_i1) |1>.
/// Amplitudes are real and non-negative (one canonical phase gauge).
struct QuantumModel {
  std::array<Amplitude2, 2> amp{};
  std::array<double, 2> weights{};

  double overlap() const noexcept { return spin_epsilon::overlap(amp[0], amp[1]); }
};

/// 2x2 real symmetric matrix {{a, b}, {b, d}}.
struct DensityMatrix2 {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;

  double trace() const noexcept { return a + d; }
  /// Ascending eigenvalues; the small one is det / large, so it keeps full
  /// relative precision when the matrix is nearly rank one.
  std::array<double, 2> eigenvalues() const noexcept;
};

QuantumModel build_quantum_model(const TransitionMatrix& tm);

/// Pure-state mixture from arbitrary (unit-norm) encodings and weights.
DensityMatrix2 mixture_density(const std::array<Amplitude2, 2>& states, const std::array<double, 2>& weights);

/// rho = p0 |s0><s0| + p1 |s1><s1|.
DensityMatrix2 stationary_density(const QuantumModel& model);

/// von Neumann entropy in bits, 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix2& rho) noexcept;

/// C_q: entropy of the stationary memory state.
double quantum_statistical_complexity(const QuantumModel& model);

/// Eigenvalues 1/2 (1 -/+ sqrt(1 - 4 p0 p1 (1 - f^2))) of any two-pure-state
/// mixture with weights (p0, 1 - p0) and overlap f.
std::array<double, 2> two_state_mixture_eigenvalues(double p0, double f) noexcept;

/// Entropy (bits) of a two-pure-state mixture as a function of weight and overlap.
double two_state_mixture_entropy(double p0, double f) noexcept;

struct FidelityReport {
  double quantum_overlap = 0.0;
  std::vector<double> classical;  // index k holds L = k + 1
  double max_gap = 0.0;
  bool bound_holds = false;
  bool saturated = false;
  bool pass() const noexcept { return bound_holds && saturated; }
};

/// Compares <s0|s1> to the classical fidelity of conditional futures for
/// L = 1..max_length. The overlap may never exceed it (upper bound on any
/// valid encoding); equality certifies optimality of the encoding.
FidelityReport fidelity_saturation_check(const TransitionMatrix& tm, const QuantumModel& model,
                                         std::size_t max_length = 12, double tol = 1e-10);

/// C_mu and C_q at one parameter point.
struct ComplexityPoint {
  IsingParams params;
  TransitionMatrix tm;
  double fidelity = 0.0;
  double c_mu = 0.0;
  double c_q = 0.0;
};

ComplexityPoint evaluate_complexities(const IsingParams& params);

struct TmaxResult {
  double t_max = 0.0;
  double cq_max = 0.0;
  double cmu_at_t_max = 0.0;
  bool interior = false;   // false: maximum sits on a range endpoint
  bool unimodal = true;    // false: grid shows several local maxima, grid argmax kept
};

/// Maximizer of C_q(T) at fixed (J, B): 101-point log-spaced scan of
/// [t_lo, t_hi], then golden-section refinement to bracket width `tol`.
/// Throws DomainError when the range is not inside (0, inf) or tol <= 0.
TmaxResult find_tmax(double J, double B, double t_lo, double t_hi, double tol);

}  // namespace spin_epsilon
