// Test-only oracles, kept independent of the code paths they check:
// Monte Carlo expectations drive the quadrature checks, a log-spaced grid
// search drives the power-solver checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <vector>

#include "eeqos/params.hpp"
#include "eeqos/rng.hpp"
#include "eeqos/simulator.hpp"

namespace eeqos::test {

/// Sample mean of exp(-u*S) over n Nakagami SNR draws; checks laplace_service.
inline double mc_laplace_service(double u, double Ptx, const SystemParams& params,
                                 std::uint64_t n, std::uint64_t seed) {
  const double phi = params.Ts * params.Bc / std::numbers::ln2;
  const double snr_gain = Ptx / (params.Lp * params.N0 * params.Bc);
  const unsigned chunks = 8;
  std::vector<std::future<double>> futs;
  for (unsigned c = 0; c < chunks; ++c) {
    futs.push_back(std::async(std::launch::async, [&, c] {
      Xoshiro256pp rng(seed, c + 1);
      const std::uint64_t draws = n / chunks;
      double acc = 0.0;
      for (std::uint64_t i = 0; i < draws; ++i) {
        const double g = sample_snr(params, rng);
        acc += std::exp(-u * phi * std::log1p(snr_gain * g));
      }
      return acc / static_cast<double>(draws);
    }));
  }
  double total = 0.0;
  for (auto& f : futs) total += f.get();
  return total / chunks;
}

/// Sample mean of Bc*log2(1 + Ptx*g/(Lp*N0*Bc)); checks mean_capacity.
inline double mc_mean_capacity(double Ptx, const SystemParams& params, std::uint64_t n,
                               std::uint64_t seed) {
  const double snr_gain = Ptx / (params.Lp * params.N0 * params.Bc);
  Xoshiro256pp rng(seed);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < n; ++i)
    acc += std::log1p(snr_gain * sample_snr(params, rng)) / std::numbers::ln2;
  return params.Bc * acc / static_cast<double>(n);
}

/// Sample estimate of the effective bandwidth (1/(u*Ts)) ln E[e^{uA}].
inline double mc_effective_bandwidth(double u, const TrafficModel& traffic,
                                     std::uint64_t n, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < n; ++i)
    acc += std::exp(u * sample_arrival(traffic, rng));
  return std::log(acc / static_cast<double>(n)) / (u * traffic.Ts);
}

/// Smallest power on a 1024-point log grid over (Pmin, Pmax] satisfying
/// laplace_service(u, P) <= target; the solver's answer must fall between
/// this grid point and its left neighbor.
struct GridBracket {
  double below;  // largest grid power still violating the constraint
  double at;     // smallest grid power satisfying it
};
inline GridBracket grid_min_feasible_power(
    double u, double target, const SystemParams& params,
    const std::function<double(double, double, const SystemParams&)>& laplace,
    std::size_t n = 1024) {
  const double pmin = 1e-6;
  const double ratio = std::pow(params.Pmax / pmin, 1.0 / static_cast<double>(n - 1));
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double P = pmin * std::pow(ratio, static_cast<double>(i));
    if (laplace(u, P, params) <= target) return {prev, P};
    prev = P;
  }
  return {prev, std::numeric_limits<double>::quiet_NaN()};
}

/// Table-I / reference experiment parameters.
inline SystemParams table1_params() {
  return make_system_params(1e-3, 180e3, std::pow(10.0, (-174.0 - 30.0) / 10.0), 2.0,
                            10.0, 1.0, 0.1, 0.03, 10.0);
}

inline const char* table1_config_text() {
  return "Ts_s = 1e-3\n"
         "Bc_hz = 180e3\n"
         "N0_dbm_hz = -174\n"
         "m = 2\n"
         "gamma_bar_db = 10\n"
         "d_km = 1\n"
         "Pc_w = 0.1\n"
         "Pidle_w = 0.03\n"
         "p = 0.5\n"
         "Lbar_bits = 1488\n"
         "Dmax_s = 10e-3\n"
         "eps = 0.01\n";
}

}  // namespace eeqos::test
