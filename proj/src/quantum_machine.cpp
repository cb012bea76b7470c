#include "spin_epsilon/quantum_machine.hpp"

#include <algorithm>
#include <cmath>

#include "spin_epsilon/classical_machine.hpp"
#include "spin_epsilon/errors.hpp"

namespace spin_epsilon {

double overlap(const Amplitude2& a, const Amplitude2& b) noexcept {
  return a[0] * b[0] + a[1] * b[1];
}

std::array<double, 2> DensityMatrix2::eigenvalues() const noexcept {
  const double mean = (a + d) / 2.0;
  const double radius = std::hypot((a - d) / 2.0, b);
  const double large = mean + radius;
  if (!(large > 0.0)) {
    return {mean - radius, large};
  }
  const double small = (a * d - b * b) / large;
  return {small, large};
}

QuantumModel build_quantum_model(const TransitionMatrix& tm) {
  QuantumModel model;
  for (std::size_t i = 0; i < 2; ++i) {
    model.amp[i] = {std::sqrt(tm.t[i][0]), std::sqrt(tm.t[i][1])};
  }
  model.weights = tm.p;
  return model;
}

DensityMatrix2 mixture_density(const std::array<Amplitude2, 2>& states, const std::array<double, 2>& weights) {
  DensityMatrix2 rho;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& s = states[i];
    rho.a += weights[i] * s[0] * s[0];
    rho.b += weights[i] * s[0] * s[1];
    rho.d += weights[i] * s[1] * s[1];
  }
  return rho;
}

DensityMatrix2 stationary_density(const QuantumModel& model) {
  return mixture_density(model.amp, model.weights);
}

double von_neumann_entropy(const DensityMatrix2& rho) noexcept {
  double h = 0.0;
  for (double lambda : rho.eigenvalues()) {
    lambda = std::clamp(lambda, 0.0, 1.0);  // round-off around a pure state
    if (lambda > 0.0) h -= lambda * std::log2(lambda);
  }
  return std::max(h, 0.0);
}

double quantum_statistical_complexity(const QuantumModel& model) {
  return von_neumann_entropy(stationary_density(model));
}

std::array<double, 2> two_state_mixture_eigenvalues(double p0, double f) noexcept {
  const double det = p0 * (1.0 - p0) * (1.0 - f * f);
  const double large = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * det)));
  return {det / large, large};
}

double two_state_mixture_entropy(double p0, double f) noexcept {
  double h = 0.0;
  for (double lambda : two_state_mixture_eigenvalues(p0, f)) {
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) h -= lambda * std::log2(lambda);
  }
  return std::max(h, 0.0);
}

FidelityReport fidelity_saturation_check(const TransitionMatrix& tm, const QuantumModel& model,
                                         std::size_t max_length, double tol) {
  FidelityReport report;
  report.quantum_overlap = std::abs(model.overlap());
  report.bound_holds = true;
  for (std::size_t L = 1; L <= max_length; ++L) {
    const double f = classical_fidelity(tm, L);
    report.classical.push_back(f);
    const double gap = std::abs(report.quantum_overlap - f);
    report.max_gap = std::max(report.max_gap, gap);
    if (report.quantum_overlap > f + tol) report.bound_holds = false;
  }
  report.saturated = report.max_gap <= tol;
  return report;
}

ComplexityPoint evaluate_complexities(const IsingParams& params) {
  const auto tm = transition_matrix(params);
  const auto model = build_quantum_model(tm);
  return ComplexityPoint{params, tm, model.overlap(), statistical_complexity(tm),
                         quantum_statistical_complexity(model)};
}

namespace {

double cq_at(double J, double B, double T) {
  return evaluate_complexities(IsingParams::make(J, B, T)).c_q;
}

}  // namespace

TmaxResult find_tmax(double J, double B, double t_lo, double t_hi, double tol) {
  if (!(t_lo > 0.0) || !std::isfinite(t_hi) || !(t_hi > t_lo)) {
    throw DomainError("temperature range must satisfy 0 < t_lo < t_hi < inf");
  }
  if (!(tol > 0.0)) {
    throw DomainError("tolerance must be positive");
  }

  constexpr std::size_t kGrid = 101;
  std::vector<double> temps(kGrid);
  std::vector<double> cq(kGrid);
  const double log_lo = std::log(t_lo);
  const double log_step = (std::log(t_hi) - log_lo) / static_cast<double>(kGrid - 1);
  for (std::size_t k = 0; k < kGrid; ++k) {
    temps[k] = k + 1 == kGrid ? t_hi : std::exp(log_lo + log_step * static_cast<double>(k));
    cq[k] = cq_at(J, B, temps[k]);
  }
  const auto best = static_cast<std::size_t>(std::max_element(cq.begin(), cq.end()) - cq.begin());

  std::size_t peaks = 0;
  for (std::size_t k = 1; k + 1 < kGrid; ++k) {
    if (cq[k] > cq[k - 1] && cq[k] >= cq[k + 1]) ++peaks;
  }

  TmaxResult result;
  result.t_max = temps[best];
  result.cq_max = cq[best];
  result.unimodal = peaks <= 1;
  result.interior = best != 0 && best + 1 != kGrid && cq[best] > cq.front() && cq[best] > cq.back();

  if (result.interior && result.unimodal) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double lo = temps[best - 1];
    double hi = temps[best + 1];
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = cq_at(J, B, x1);
    double f2 = cq_at(J, B, x2);
    while (hi - lo > tol) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = cq_at(J, B, x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = cq_at(J, B, x1);
      }
    }
    const double t_refined = 0.5 * (lo + hi);
    const double cq_refined = cq_at(J, B, t_refined);
    if (cq_refined >= result.cq_max) {
      result.t_max = t_refined;
      result.cq_max = cq_refined;
    }
  }
  result.cmu_at_t_max = evaluate_complexities(IsingParams::make(J, B, result.t_max)).c_mu;
  return result;
}

}  // namespace spin_epsilon
