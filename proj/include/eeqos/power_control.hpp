#pragma once

#include <iosfwd>

#include "eeqos/effcap.hpp"
#include "eeqos/params.hpp"

namespace eeqos {

enum class SolveStatus {
  ok,
  degenerate_no_constraint,  // eps ~ 1: constraint vacuous, stability-only power
};

struct PowerSolution {
  double Ptx = 0.0;       // W
  double u_star = 0.0;    // 1/bits
  double eta = 0.0;       // bits/J
  double P_l = 0.0;       // Lemma-style lower bound, W
  double residual = 0.0;  // final |laplace_service - 1/beta|
  int iterations = 0;
  bool feasible = false;
  SolveStatus status = SolveStatus::ok;
};

/// Two-mode cross-layer energy efficiency, bits/J:
/// mu / (Ptx + Pc - (Ptx - Pidle) * u*Lbar * (1-p)).
double energy_efficiency(double Ptx, QoSExponent u, const TrafficModel& traffic,
                         const SystemParams& params);

/// Closed-form lower bound on the transmission power meeting the service
/// constraint at exponent u*. Singular at u* = 0.
double power_lower_bound(QoSExponent u, const TrafficModel& traffic,
                         const SystemParams& params);

/// Efficiency upper bound: energy_efficiency evaluated at the power lower
/// bound.
double energy_efficiency_upper(QoSExponent u, const TrafficModel& traffic,
                               const SystemParams& params);

/// Strict stability p*Lbar < E[S] at this transmission power.
bool check_stability(double Ptx, const TrafficModel& traffic, const SystemParams& params);

/// Power where E[S] equals the mean arrival p*Lbar (bisection on (0, Pmax]).
/// Throws SolverError{unstable} when even Pmax cannot stabilize the queue.
double stability_threshold_power(const TrafficModel& traffic, const SystemParams& params);

/// Minimum constant transmission power meeting the delay-outage target with
/// equality: bracketing bisection on |laplace_service(u*, P) - 1/beta| <= tol
/// with u* from the closed-form constraint exponent.
PowerSolution solve_min_power(const TrafficModel& traffic, const QoSTarget& qos,
                              const SystemParams& params, double tol = 1e-6);

/// Rival scheme that assumes a unit delay prefactor: its exponent solves
/// ratio^(Dmax/Ts) = eps, and its efficiency is the single-mode
/// mu/(Ptx + Pc). Uses more power than solve_min_power at the same target.
PowerSolution solve_min_power_method1(const TrafficModel& traffic, const QoSTarget& qos,
                                      const SystemParams& params, double tol = 1e-6);

/// One CSV row: Ptx_w,u_star,eta_bits_per_j,P_l_w,residual,iterations,feasible
void write_power_csv(std::ostream& os, const PowerSolution& sol);

}  // namespace eeqos
