#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "spin_epsilon/ising.hpp"

namespace spin_epsilon {

inline constexpr const char* kSweepCsvHeader = "T,J,B,p0,p1,T00,T01,T10,T11,fidelity,C_mu_bits,C_q_bits,ratio";

/// C_q values below this are treated as zero when forming C_mu / C_q.
inline constexpr double kRatioFloor = 1e-12;

struct SweepRow {
  double T = 0.0;
  double J = 0.0;
  double B = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
  double T00 = 0.0;
  double T01 = 0.0;
  double T10 = 0.0;
  double T11 = 0.0;
  double fidelity = 0.0;
  double c_mu = 0.0;
  double c_q = 0.0;
  std::optional<double> ratio;
};

SweepRow compute_row(const IsingParams& params);

/// Throws std::logic_error when C_q exceeds C_mu by more than 1e-10.
void check_row(const SweepRow& row);

/// One CSV line, no trailing newline, every number printed with 17 significant digits.
std::string format_csv_row(const SweepRow& row);
nlohmann::json to_json(const SweepRow& row);

enum class Spacing { linear, log };

/// Grid endpoints are reproduced exactly. Throws DomainError unless
/// 0 < t_min < t_max < inf and points >= 2.
std::vector<double> temperature_grid(double t_min, double t_max, std::size_t points, Spacing spacing);

/// Worker count: SPIN_EPSILON_THREADS when set and positive, else hardware concurrency.
std::size_t worker_count();

/// Rows in grid order regardless of which worker finished first.
std::vector<SweepRow> run_sweep(double J, double B, const std::vector<double>& temps, std::size_t workers);

/// Header plus one line per row; validates every row first.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Grid index of the largest C_q (first one on ties).
std::size_t argmax_cq(const std::vector<SweepRow>& rows);

}  // namespace spin_epsilon
