#include "spin_epsilon/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "spin_epsilon/errors.hpp"
#include "spin_epsilon/quantum_machine.hpp"

namespace spin_epsilon {

namespace {

std::string fixed17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SweepRow compute_row(const IsingParams& params) {
  const ComplexityPoint point = evaluate_complexities(params);
  SweepRow row;
  row.T = params.T();
  row.J = params.J();
  row.B = params.B();
  row.p0 = point.tm.p[0];
  row.p1 = point.tm.p[1];
  row.T00 = point.tm.t[0][0];
  row.T01 = point.tm.t[0][1];
  row.T10 = point.tm.t[1][0];
  row.T11 = point.tm.t[1][1];
  row.fidelity = point.fidelity;
  row.c_mu = point.c_mu;
  row.c_q = point.c_q;
  if (point.c_q >= kRatioFloor) row.ratio = point.c_mu / point.c_q;
  return row;
}

void check_row(const SweepRow& row) {
  if (row.c_q > row.c_mu + 1e-10) {
    throw std::logic_error("C_q exceeds C_mu at T = " + fixed17(row.T) + ", J = " + fixed17(row.J) +
                           ", B = " + fixed17(row.B) + " (C_q = " + fixed17(row.c_q) +
                           ", C_mu = " + fixed17(row.c_mu) + ")");
  }
}

std::string format_csv_row(const SweepRow& row) {
  std::string line;
  for (double v : {row.T, row.J, row.B, row.p0, row.p1, row.T00, row.T01, row.T10, row.T11, row.fidelity,
                   row.c_mu, row.c_q}) {
    line += fixed17(v);
    line += ',';
  }
  if (row.ratio) line += fixed17(*row.ratio);
  return line;
}

nlohmann::json to_json(const SweepRow& row) {
  nlohmann::json j = {
      {"T", std::isinf(row.T) ? nlohmann::json("inf") : nlohmann::json(row.T)},
      {"J", row.J},
      {"B", row.B},
      {"p0", row.p0},
      {"p1", row.p1},
      {"T00", row.T00},
      {"T01", row.T01},
      {"T10", row.T10},
      {"T11", row.T11},
      {"fidelity", row.fidelity},
      {"C_mu_bits", row.c_mu},
      {"C_q_bits", row.c_q},
  };
  j["ratio"] = row.ratio ? nlohmann::json(*row.ratio) : nlohmann::json(nullptr);
  return j;
}

std::vector<double> temperature_grid(double t_min, double t_max, std::size_t points, Spacing spacing) {
  if (!(t_min > 0.0) || !std::isfinite(t_max) || !(t_max > t_min)) {
    throw DomainError("sweep range must satisfy 0 < t_min < t_max < inf");
  }
  if (points < 2) throw DomainError("a sweep needs at least two points");
  std::vector<double> grid(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    const double frac = static_cast<double>(k) / last;
    grid[k] = spacing == Spacing::linear ? t_min + frac * (t_max - t_min)
                                         : std::exp(std::log(t_min) + frac * (std::log(t_max) - std::log(t_min)));
  }
  grid.front() = t_min;
  grid.back() = t_max;
  return grid;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("SPIN_EPSILON_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<SweepRow> run_sweep(double J, double B, const std::vector<double>& temps, std::size_t workers) {
  // Validate up front so worker threads never throw.
  std::vector<IsingParams> params;
  params.reserve(temps.size());
  for (double T : temps) params.push_back(IsingParams::make(J, B, T));

  std::vector<SweepRow> rows(temps.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < params.size(); i = next++) rows[i] = compute_row(params[i]);
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, temps.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  for (const auto& row : rows) check_row(row);
  out << kSweepCsvHeader << '\n';
  for (const auto& row : rows) out << format_csv_row(row) << '\n';
}

std::size_t argmax_cq(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw SizeError("empty sweep");
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].c_q > rows[best].c_q) best = i;
  }
  return best;
}

}  // namespace spin_epsilon
