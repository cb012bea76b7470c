#include "spin_epsilon/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "spin_epsilon/circuit.hpp"
#include "spin_epsilon/classical_machine.hpp"
#include "spin_epsilon/oracle.hpp"
#include "spin_epsilon/sweep.hpp"

namespace spin_epsilon {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string describe(const IsingParams& p) {
  return "(J=" + num(p.J()) + ", B=" + num(p.B()) + ", T=" + num(p.T()) + ")";
}

template <typename Body>
CheckResult timed(std::string name, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult result{std::move(name), false, {}, 0.0};
  body(result);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += num(v[i]);
  }
  return out + "]";
}

}  // namespace

IsingParams ParamSampler::next() {
  std::uniform_real_distribution<double> coupling(-3.0, 3.0);
  std::uniform_real_distribution<double> log_t(std::log(0.05), std::log(100.0));
  const double J = coupling(rng_);
  const double B = coupling(rng_);
  return IsingParams::make(J, B, std::exp(log_t(rng_)));
}

OracleConvergence oracle_convergence(const IsingParams& params, std::span<const std::size_t> n_halves, std::size_t L,
                                     std::size_t gap_history) {
  OracleConvergence out;
  const auto tm = transition_matrix(params);
  std::vector<double> reference;
  for (std::size_t start = 0; start < 2; ++start) {
    const auto table = future_distribution(tm, start, L).probs;
    reference.insert(reference.end(), table.begin(), table.end());
  }

  const auto window_sites = markov_window_sites(gap_history);
  std::vector<std::vector<double>> cond_tables;
  std::vector<std::vector<double>> windows;
  for (std::size_t n = n_halves.front(); n <= n_halves.back(); ++n) {
    const auto ens = enumerate_ring(params, n);
    std::vector<double> cond;
    for (Symbol c : {Symbol{1}, Symbol{-1}}) {
      const auto table = conditional_from_ring(ens, c, L).probs;
      cond.insert(cond.end(), table.begin(), table.end());
    }
    auto window = window_marginal(ens, window_sites);
    if (std::find(n_halves.begin(), n_halves.end(), n) != n_halves.end()) {
      double err = 0.0;
      for (std::size_t i = 0; i < cond.size(); ++i) err = std::max(err, std::abs(cond[i] - reference[i]));
      out.n_halves.push_back(n);
      out.table_error.push_back(err);
      out.gap.push_back(markov_gap_of_window(window, gap_history));
    }
    cond_tables.push_back(std::move(cond));
    windows.push_back(std::move(window));
  }

  const auto limit = extrapolate_tables(cond_tables);
  for (std::size_t i = 0; i < limit.size(); ++i) {
    out.extrapolated_error = std::max(out.extrapolated_error, std::abs(limit[i] - reference[i]));
  }
  out.extrapolated_gap = markov_gap_of_window(extrapolate_tables(windows), gap_history);
  return out;
}

CheckResult check_oracle_convergence(const IsingParams& params, std::span<const std::size_t> n_halves,
                                     double error_tol, double gap_tol) {
  return timed("oracle convergence " + describe(params), [&](CheckResult& r) {
    const auto conv = oracle_convergence(params, n_halves, 3, 3);
    const bool decreasing = strictly_decreasing(conv.table_error);
    const bool gap_decreasing = strictly_decreasing(conv.gap);
    const bool err_ok = conv.extrapolated_error < error_tol;
    const bool gap_ok = conv.extrapolated_gap < gap_tol;
    r.pass = decreasing && gap_decreasing && err_ok && gap_ok;
    r.detail = "raw error " + join(conv.table_error) + ", raw gap " + join(conv.gap) +
               ", extrapolated error " + num(conv.extrapolated_error) + " (< " + num(error_tol) +
               "), extrapolated gap " + num(conv.extrapolated_gap) + " (< " + num(gap_tol) + ")";
  });
}

CheckResult check_fidelity_saturation(std::size_t draws, std::uint64_t seed, const ModelBuilder& builder) {
  return timed("fidelity saturation", [&](CheckResult& r) {
    ParamSampler sampler(seed);
    double worst_closed_form = 0.0;
    double worst_gap = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const auto params = sampler.next();
      const auto tm = transition_matrix(params);
      const auto model = builder(tm);
      const double closed_form_gap = std::abs(model.overlap() - single_step_fidelity(tm));
      const auto report = fidelity_saturation_check(tm, model);
      worst_closed_form = std::max(worst_closed_form, closed_form_gap);
      worst_gap = std::max(worst_gap, report.max_gap);
      if (closed_form_gap >= 1e-12 || !report.pass()) {
        r.detail = "counterexample " + describe(params) + ": overlap " + num(model.overlap()) +
                   ", classical fidelity " + num(report.classical.front()) + ", gap " + num(report.max_gap);
        return;
      }
    }
    r.pass = true;
    r.detail = std::to_string(draws) + " draws, max |overlap - closed form| " + num(worst_closed_form) +
               ", max |overlap - F_L| " + num(worst_gap);
  });
}

CheckResult check_fidelity_length_independence(std::size_t draws, std::uint64_t seed) {
  return timed("fidelity length independence", [&](CheckResult& r) {
    ParamSampler sampler(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const auto params = sampler.next();
      const auto tm = transition_matrix(params);
      const double first = classical_fidelity(tm, 1);
      for (std::size_t L = 2; L <= 12; ++L) {
        const double spread = std::abs(classical_fidelity(tm, L) - first);
        worst = std::max(worst, spread);
        if (spread > 1e-10) {
          r.detail = "counterexample " + describe(params) + " at L=" + std::to_string(L) + ", spread " + num(spread);
          return;
        }
      }
    }
    r.pass = true;
    r.detail = std::to_string(draws) + " draws, max spread over L=1..12 " + num(worst);
  });
}

CheckResult check_circuit_born_rule(std::size_t draws, std::size_t max_length, std::uint64_t seed,
                                    const ModelBuilder& builder) {
  return timed("circuit output equals epsilon-machine futures", [&](CheckResult& r) {
    ParamSampler sampler(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const auto params = sampler.next();
      const auto tm = transition_matrix(params);
      const auto su = build_step_unitaries(builder(tm));
      for (std::size_t L = 1; L <= max_length; ++L) {
        for (std::size_t start = 0; start < 2; ++start) {
          const double diff =
              max_abs_difference(exact_output_distribution(su, start, L), future_distribution(tm, start, L));
          worst = std::max(worst, diff);
          if (diff > 1e-12) {
            r.detail = "counterexample " + describe(params) + " start " + std::to_string(start) +
                       " L=" + std::to_string(L) + ", max entry error " + num(diff);
            return;
          }
        }
      }
    }
    r.pass = true;
    r.detail = std::to_string(draws) + " draws, L<=" + std::to_string(max_length) + ", max entry error " + num(worst);
  });
}

CheckResult check_synchronization(std::size_t draws, std::size_t depth, std::uint64_t seed,
                                  const ModelBuilder& builder) {
  return timed("memory synchronization", [&](CheckResult& r) {
    ParamSampler sampler(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const auto params = sampler.next();
      const auto model = builder(transition_matrix(params));
      const auto report = assert_synchronization(build_step_unitaries(model), model, depth);
      worst = std::max(worst, report.worst_deviation);
      if (!report.pass) {
        r.detail = "counterexample " + describe(params) + ": " + report.first_failure.value_or("");
        return;
      }
    }
    r.pass = true;
    r.detail = std::to_string(draws) + " draws, depth " + std::to_string(depth) + ", max deviation " + num(worst);
  });
}

CheckResult check_entropy_monotonicity(std::size_t grid) {
  return timed("entropy decreases with overlap", [&](CheckResult& r) {
    double worst_eig = 0.0;
    const double step = 1.0 / static_cast<double>(grid + 1);
    for (std::size_t a = 1; a <= grid; ++a) {
      const double p0 = step * static_cast<double>(a);
      double previous = 0.0;
      for (std::size_t b = 1; b <= grid; ++b) {
        const double f = step * static_cast<double>(b);
        const double angle = std::acos(f);
        const DensityMatrix2 rho = mixture_density({Amplitude2{1.0, 0.0}, Amplitude2{f, std::sin(angle)}}, {p0, 1.0 - p0});
        const auto direct = rho.eigenvalues();
        const auto closed = two_state_mixture_eigenvalues(p0, f);
        const double eig_err = std::max(std::abs(direct[0] - closed[0]), std::abs(direct[1] - closed[1]));
        worst_eig = std::max(worst_eig, eig_err);
        const double h = von_neumann_entropy(rho);
        if (eig_err > 1e-12 || (b > 1 && !(h < previous))) {
          r.detail = "counterexample p0=" + num(p0) + ", f=" + num(f) + ": eigenvalue error " + num(eig_err) +
                     ", entropy " + num(h) + " after " + num(previous);
          return;
        }
        previous = h;
      }
    }
    r.pass = true;
    r.detail = std::to_string(grid) + "x" + std::to_string(grid) + " grid, max eigenvalue error " + num(worst_eig);
  });
}

CheckResult check_sweep_shape() {
  return timed("sweep shape J=1 B=0.3", [&](CheckResult& r) {
    const auto temps = temperature_grid(0.05, 100.0, 200, Spacing::log);
    const auto rows = run_sweep(1.0, 0.3, temps, 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].c_mu < rows[i - 1].c_mu) {
        r.detail = "C_mu decreases between T=" + num(rows[i - 1].T) + " and T=" + num(rows[i].T);
        return;
      }
    }
    const std::size_t peak = argmax_cq(rows);
    if (peak == 0 || peak + 1 == rows.size()) {
      r.detail = "C_q maximum on the boundary at T=" + num(rows[peak].T);
      return;
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const bool rising = i <= peak;
      if (rising ? rows[i].c_q < rows[i - 1].c_q : rows[i].c_q > rows[i - 1].c_q) {
        r.detail = "C_q not unimodal near T=" + num(rows[i].T);
        return;
      }
    }
    r.pass = true;
    r.detail = "C_mu non-decreasing from " + num(rows.front().c_mu) + " to " + num(rows.back().c_mu) +
               "; C_q peaks at T=" + num(rows[peak].T) + " with " + num(rows[peak].c_q) + " bits";
  });
}

CheckResult check_high_temperature() {
  return timed("high-temperature divergence", [&](CheckResult& r) {
    const auto hot = compute_row(IsingParams::make(1.0, 0.3, 1e4));
    const auto warm = compute_row(IsingParams::make(1.0, 0.3, 10.0));
    const double growth = hot.ratio && warm.ratio ? *hot.ratio / *warm.ratio : 0.0;
    r.pass = hot.c_q < 1e-3 && hot.c_mu > 0.99 && growth >= 10.0;
    r.detail = "C_q(1e4)=" + num(hot.c_q) + ", C_mu(1e4)=" + num(hot.c_mu) + ", ratio growth " + num(growth);
  });
}

CheckResult check_degenerate_limits() {
  return timed("degenerate limits", [&](CheckResult& r) {
    const auto uniform = evaluate_complexities(IsingParams::infinite_temperature(1.0, 0.3));
    const auto frozen = evaluate_complexities(IsingParams::make(1.0, 0.0, 0.05));
    const bool uniform_ok = uniform.c_mu == 0.0 && uniform.c_q == 0.0;
    const bool frozen_ok = std::abs(frozen.c_mu - frozen.c_q) < 1e-3 && std::abs(frozen.c_mu - 1.0) < 1e-3 &&
                           std::abs(frozen.c_q - 1.0) < 1e-3;
    r.pass = uniform_ok && frozen_ok;
    r.detail = "uniform C_mu=" + num(uniform.c_mu) + " C_q=" + num(uniform.c_q) + "; T=0.05 C_mu=" +
               num(frozen.c_mu) + " C_q=" + num(frozen.c_q);
  });
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const bool full = options.level == VerifyLevel::full;
  const std::size_t draws = full ? 500 : 50;
  std::vector<std::size_t> rings = full ? std::vector<std::size_t>{4, 6, 8, 10} : std::vector<std::size_t>{4, 5, 6};
  const double error_tol = full ? 1e-6 : 5e-3;
  const double gap_tol = full ? 1e-5 : 5e-3;

  std::vector<CheckResult> results;
  results.push_back(check_oracle_convergence(IsingParams::make(1.0, 0.3, 2.0), rings, error_tol, gap_tol));
  results.push_back(check_oracle_convergence(IsingParams::make(1.0, 0.0, 1.0), rings, error_tol, gap_tol));
  results.push_back(check_fidelity_saturation(draws, options.seed, options.builder));
  results.push_back(check_fidelity_length_independence(full ? 200 : 50, options.seed + 1));
  results.push_back(check_circuit_born_rule(full ? 100 : 50, 10, options.seed + 2, options.builder));
  results.push_back(check_synchronization(full ? 200 : 50, 6, options.seed + 3, options.builder));
  results.push_back(check_entropy_monotonicity(50));
  results.push_back(check_sweep_shape());
  results.push_back(check_high_temperature());
  results.push_back(check_degenerate_limits());
  return results;
}

}  // namespace spin_epsilon
