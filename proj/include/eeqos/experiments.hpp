#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "eeqos/params.hpp"
#include "eeqos/power_control.hpp"
#include "eeqos/simulator.hpp"

namespace eeqos {

/// Options shared by the experiment commands. Grids default to the ranges
/// used in the reference experiments.
struct ExperimentOptions {
  Config cfg;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  std::uint64_t slots = 1'000'000;
  std::optional<double> ptx;   // fixed operating power; default: solve for it
  std::size_t ccdf_points = 31;  // delay grid 0..(n-1) slots
  double dmax_min_s = 2e-3;
  double dmax_max_s = 100e-3;
  double dmax_step_s = 1e-3;
  double p_min = 0.1;
  double p_max = 1.0;
  double p_step = 0.1;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Operating power and exponent for simulation-style commands: either the
/// minimum-power solution of the config's QoS target, or the fixed-point
/// exponent of an explicitly given power.
struct OperatingPoint {
  double Ptx;
  double u_star;
};
OperatingPoint resolve_operating_point(const ExperimentOptions& opt);

void run_solve(const ExperimentOptions& opt, std::ostream& csv, std::ostream& log);

void run_simulate(const ExperimentOptions& opt, std::ostream& stats_csv,
                  std::ostream* ccdf_csv, std::ostream& log);

/// Four CCDF curves (empirical, proposition1, method1, method2) over the
/// delay grid, long CSV format.
void run_ccdf_compare(const ExperimentOptions& opt, std::ostream& csv, std::ostream& log);

struct DelaySweepRow {
  double Dmax_s;
  double eta_proposed;
  double eta_method1;
  double improvement_pct;
  bool feasible_proposed;
  bool feasible_method1;
};
std::vector<DelaySweepRow> sweep_delay_rows(const ExperimentOptions& opt);
void run_sweep_delay(const ExperimentOptions& opt, std::ostream& csv, std::ostream& log);

struct RateSweepRow {
  double p;
  double mu_bits_per_s;
  double eta_bits_per_j;
  bool feasible;
};
std::vector<RateSweepRow> sweep_rate_rows(const ExperimentOptions& opt);
void run_sweep_rate(const ExperimentOptions& opt, std::ostream& csv, std::ostream& log);

/// Default delay grid: k*Ts for k = 0..points-1.
std::vector<double> default_delay_grid(double Ts, std::size_t points);

}  // namespace eeqos
