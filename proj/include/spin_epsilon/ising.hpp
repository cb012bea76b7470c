#pragma once

#include <array>
#include <cstddef>
#include <limits>

namespace spin_epsilon {

/// Spin symbol convention: index 0 <-> spin +1 <-> causal state s_0,
/// index 1 <-> spin -1 <-> causal state s_1.
inline constexpr int spin_of_index(std::size_t index) noexcept {
  return index == 0 ? +1 : -1;
}

/// Physical parameters of the nearest-neighbour Ising chain (k_B = 1).
///
/// Construct through make() or infinite_temperature(). The infinite
/// temperature limit is carried as beta == 0 with T == +inf.
class IsingParams {
 public:
  /// Throws InvalidInput on non-finite values and DomainError on T <= 0.
  static IsingParams make(double J, double B, double T);

  /// Explicit beta -> 0 limit. Spins decouple and every transition is 1/2.
  static IsingParams infinite_temperature(double J, double B);

  double J() const noexcept { return J_; }
  double B() const noexcept { return B_; }
  double T() const noexcept { return T_; }
  double beta() const noexcept { return beta_; }
  bool is_infinite_temperature() const noexcept { return beta_ == 0.0; }

 private:
  IsingParams(double J, double B, double T, double beta)
      : J_(J), B_(B), T_(T), beta_(beta) {}

  double J_;
  double B_;
  double T_;
  double beta_;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Row-stochastic single-step spin statistics plus the stationary law.
/// t[i][j] = P(X_{k+1} = spin_of_index(j) | X_k = spin_of_index(i)).
struct TransitionMatrix {
  Matrix2 t{};
  std::array<double, 2> p{};

  /// Throws InvalidInput when rows are not stochastic, entries leave [0,1],
  /// or p is not a left fixed point (all at tolerance `tol`).
  void validate(double tol = 1e-12) const;

  /// Rows equal within `tol`: both causal states predict the same future.
  bool rows_coincide(double tol = 1e-12) const noexcept;

  /// Swap the roles of +1 and -1 in both t and p.
  TransitionMatrix spin_flipped() const noexcept;
};

/// Transfer-matrix solution of the infinite chain.
///
/// Uses the symmetric-field transfer matrix
///   V[x][x'] = exp(beta (J s(x) s(x') + B (s(x) + s(x')) / 2))
/// and its Perron eigenpair (lambda, v):
///   t[i][j] = V[i][j] v[j] / (lambda v[i]),   p[i] ∝ v[i]^2.
/// The eigenpair comes from the closed quadratic formula; V is rescaled in
/// the log domain first so large beta never overflows.
TransitionMatrix transition_matrix(const IsingParams& params);

/// Uniform rows and p = (1/2, 1/2): the beta == 0 limit.
TransitionMatrix uniform_transition_matrix() noexcept;

}  // namespace spin_epsilon
