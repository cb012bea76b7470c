#include "spin_epsilon/ising.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spin_epsilon/errors.hpp"

namespace spin_epsilon {

IsingParams IsingParams::make(double J, double B, double T) {
  if (!std::isfinite(J) || !std::isfinite(B) || std::isnan(T)) {
    throw InvalidInput("Ising parameters must be finite");
  }
  if (std::isinf(T)) {
    throw InvalidInput("infinite temperature must be requested via IsingParams::infinite_temperature");
  }
  if (T <= 0.0) {
    throw DomainError("temperature must be strictly positive, got T = " + std::to_string(T));
  }
  return IsingParams(J, B, T, 1.0 / T);
}

IsingParams IsingParams::infinite_temperature(double J, double B) {
  if (!std::isfinite(J) || !std::isfinite(B)) {
    throw InvalidInput("Ising parameters must be finite");
  }
  return IsingParams(J, B, std::numeric_limits<double>::infinity(), 0.0);
}

void TransitionMatrix::validate(double tol) const {
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (!(t[i][j] >= 0.0 && t[i][j] <= 1.0)) {
        throw InvalidInput("transition entry outside [0, 1]");
      }
    }
    if (std::abs(t[i][0] + t[i][1] - 1.0) > tol) {
      throw InvalidInput("transition row " + std::to_string(i) + " does not sum to 1");
    }
  }
  if (!(p[0] >= 0.0 && p[1] >= 0.0) || std::abs(p[0] + p[1] - 1.0) > tol) {
    throw InvalidInput("stationary distribution is not normalized");
  }
  for (std::size_t j = 0; j < 2; ++j) {
    const double pushed = p[0] * t[0][j] + p[1] * t[1][j];
    if (std::abs(pushed - p[j]) > tol) {
      throw InvalidInput("stationary distribution is not a left fixed point");
    }
  }
}

bool TransitionMatrix::rows_coincide(double tol) const noexcept {
  return std::abs(t[0][0] - t[1][0]) <= tol && std::abs(t[0][1] - t[1][1]) <= tol;
}

TransitionMatrix TransitionMatrix::spin_flipped() const noexcept {
  TransitionMatrix out;
  out.t = {{{t[1][1], t[1][0]}, {t[0][1], t[0][0]}}};
  out.p = {p[1], p[0]};
  return out;
}

TransitionMatrix uniform_transition_matrix() noexcept {
  TransitionMatrix out;
  out.t = {{{0.5, 0.5}, {0.5, 0.5}}};
  out.p = {0.5, 0.5};
  return out;
}

TransitionMatrix transition_matrix(const IsingParams& params) {
  if (params.is_infinite_temperature()) {
    return uniform_transition_matrix();
  }
  const double beta = params.beta();
  const double J = params.J();
  const double B = params.B();

  Matrix2 exponent{};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      const double sx = spin_of_index(x);
      const double sy = spin_of_index(y);
      exponent[x][y] = beta * (J * sx * sy + B * (sx + sy) / 2.0);
    }
  }
  const double shift = std::max({exponent[0][0], exponent[0][1], exponent[1][1]});
  const double a = std::exp(exponent[0][0] - shift);
  const double b = std::exp(exponent[0][1] - shift);
  const double d = std::exp(exponent[1][1] - shift);
  if (!(b > 0.0)) {
    throw DomainError("transfer matrix off-diagonal underflows; temperature too low for double precision");
  }

  // Perron pair of [[a, b], [b, d]] without cancellation in either branch.
  const double h = (a - d) / 2.0;
  const double r = std::hypot(h, b);
  const double lambda = (a + d) / 2.0 + r;
  std::array<double, 2> v{};
  if (h >= 0.0) {
    v = {h + r, b};
  } else {
    v = {b, r - h};
  }

  const Matrix2 V = {{{a, b}, {b, d}}};
  TransitionMatrix out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      out.t[i][j] = V[i][j] * v[j] / (lambda * v[i]);
    }
  }
  const double v0sq = v[0] * v[0];
  const double v1sq = v[1] * v[1];
  out.p = {v0sq / (v0sq + v1sq), v1sq / (v0sq + v1sq)};
  return out;
}

}  // namespace spin_epsilon
