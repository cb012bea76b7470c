#include "spin_epsilon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "spin_epsilon/errors.hpp"

namespace spin_epsilon {

namespace {

inline int spin_bit(std::size_t config, std::size_t site) noexcept {
  return ((config >> site) & 1U) ? -1 : +1;
}

std::size_t wrap(long site, std::size_t m) noexcept {
  const long mod = static_cast<long>(m);
  return static_cast<std::size_t>(((site % mod) + mod) % mod);
}

}  // namespace

RingEnsemble enumerate_ring(const IsingParams& params, std::size_t n_half) {
  if (n_half < 1 || n_half > kMaxRingHalf) {
    throw SizeError("ring half-size must lie in [1, " + std::to_string(kMaxRingHalf) + "], got " +
                    std::to_string(n_half));
  }
  const std::size_t m = 2 * n_half + 1;
  const std::size_t count = std::size_t{1} << m;
  const double beta = params.beta();

  std::vector<double> log_weight(count);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < count; ++c) {
    double energy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const int x = spin_bit(c, k);
      const int x_next = spin_bit(c, (k + 1) % m);
      energy += -params.J() * x * x_next - params.B() * x;
    }
    log_weight[c] = -beta * energy;
    top = std::max(top, log_weight[c]);
  }
  double z = 0.0;
  for (double& w : log_weight) {
    w = std::exp(w - top);
    z += w;
  }
  for (double& w : log_weight) w /= z;
  return RingEnsemble{n_half, params, std::move(log_weight)};
}

double site_marginal(const RingEnsemble& ens, std::size_t site) {
  const std::size_t m = ens.sites();
  if (site >= m) throw SizeError("site index outside the ring");
  double up = 0.0;
  for (std::size_t c = 0; c < ens.probs.size(); ++c) {
    if (((c >> site) & 1U) == 0) up += ens.probs[c];
  }
  return up;
}

std::vector<double> window_marginal(const RingEnsemble& ens, std::span<const long> sites) {
  const std::size_t m = ens.sites();
  if (sites.size() > m) throw SizeError("window larger than the ring");
  std::vector<std::size_t> wrapped;
  wrapped.reserve(sites.size());
  for (long s : sites) wrapped.push_back(wrap(s, m));

  const std::size_t w = wrapped.size();
  std::vector<double> out(std::size_t{1} << w, 0.0);
  for (std::size_t c = 0; c < ens.probs.size(); ++c) {
    std::size_t key = 0;
    for (std::size_t k = 0; k < w; ++k) {
      key = (key << 1) | ((c >> wrapped[k]) & 1U);
    }
    out[key] += ens.probs[c];
  }
  return out;
}

FutureDistribution conditional_from_ring(const RingEnsemble& ens, Symbol condition, std::size_t L) {
  if (condition != 1 && condition != -1) {
    throw InvalidInput("conditioning spin must be +1 or -1");
  }
  if (L < 1 || L > ens.n_half) {
    throw SizeError("conditional window must satisfy 1 <= L <= n_half");
  }
  std::vector<long> sites(L + 1);
  for (std::size_t k = 0; k <= L; ++k) sites[k] = static_cast<long>(k);
  const auto joint = window_marginal(ens, sites);

  const std::size_t block = std::size_t{1} << L;
  const std::size_t offset = condition > 0 ? 0 : block;
  FutureDistribution out{L, std::vector<double>(joint.begin() + static_cast<long>(offset),
                                                joint.begin() + static_cast<long>(offset + block))};
  const double norm = out.sum();
  for (double& p : out.probs) p /= norm;
  return out;
}

std::vector<long> markov_window_sites(std::size_t L) {
  std::vector<long> sites;
  for (long k = -static_cast<long>(L); k <= 1; ++k) sites.push_back(k);
  return sites;
}

double markov_gap_of_window(std::span<const double> window, std::size_t L) {
  // Index layout: [x_{-L} .. x_{-1}] [x_0] [x_1], x_1 least significant.
  const std::size_t histories = std::size_t{1} << L;
  if (window.size() != histories * 4) throw SizeError("window does not match history length");

  double pair[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (std::size_t h = 0; h < histories; ++h) {
    for (std::size_t x0 = 0; x0 < 2; ++x0) {
      for (std::size_t x1 = 0; x1 < 2; ++x1) pair[x0][x1] += window[(h << 2) | (x0 << 1) | x1];
    }
  }
  double gap = 0.0;
  for (std::size_t x0 = 0; x0 < 2; ++x0) {
    const double markov = pair[x0][0] / (pair[x0][0] + pair[x0][1]);
    for (std::size_t h = 0; h < histories; ++h) {
      const double up = window[(h << 2) | (x0 << 1)];
      const double down = window[(h << 2) | (x0 << 1) | 1U];
      if (!(up + down > 0.0)) continue;
      gap = std::max(gap, std::abs(up / (up + down) - markov));
    }
  }
  return gap;
}

double markov_gap(const RingEnsemble& ens, std::size_t L) {
  if (L < 1 || L + 1 > ens.n_half) {
    throw SizeError("markov gap requires 1 <= L and L + 1 <= n_half");
  }
  const auto sites = markov_window_sites(L);
  return markov_gap_of_window(window_marginal(ens, sites), L);
}

double wynn_epsilon(std::span<const double> sequence) {
  if (sequence.empty()) throw SizeError("cannot extrapolate an empty sequence");
  std::vector<double> prev(sequence.size() + 1, 0.0);  // column k-1
  std::vector<double> curr(sequence.begin(), sequence.end());  // column k
  double best = curr.back();
  for (std::size_t k = 0; curr.size() > 1; ++k) {
    std::vector<double> next(curr.size() - 1);
    for (std::size_t n = 0; n + 1 < curr.size(); ++n) {
      const double diff = curr[n + 1] - curr[n];
      const double scale = std::max({std::abs(curr[n]), std::abs(curr[n + 1]), 1e-300});
      if (std::abs(diff) <= 8.0 * std::numeric_limits<double>::epsilon() * scale) {
        // Column already converged to round-off.
        return k % 2 == 0 ? curr.back() : best;
      }
      next[n] = prev[n + 1] + 1.0 / diff;
    }
    prev = std::move(curr);
    curr = std::move(next);
    if (k % 2 == 1) best = curr.back();  // columns 2, 4, ... estimate the limit
  }
  return best;
}

std::vector<double> extrapolate_tables(const std::vector<std::vector<double>>& tables) {
  if (tables.empty()) throw SizeError("no tables to extrapolate");
  const std::size_t size = tables.front().size();
  std::vector<double> out(size);
  std::vector<double> column(tables.size());
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t n = 0; n < tables.size(); ++n) {
      if (tables[n].size() != size) throw SizeError("tables differ in size");
      column[n] = tables[n][i];
    }
    out[i] = wynn_epsilon(column);
  }
  return out;
}

void write_site_marginals_csv(std::ostream& out, const RingEnsemble& ens) {
  out << "site,p_plus\n";
  char buf[64];
  for (std::size_t s = 0; s < ens.sites(); ++s) {
    std::snprintf(buf, sizeof buf, "%.17g", site_marginal(ens, s));
    out << s << ',' << buf << '\n';
  }
}

}  // namespace spin_epsilon
