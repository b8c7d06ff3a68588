#pragma once

#include "eeqos/params.hpp"

namespace eeqos {

/// QoS exponent u* in 1/bits; the decay rate of the queue-length tail.
struct QoSExponent {
  double u_star = 0.0;
};

/// E[e^{uA}] of the Bernoulli-exponential arrival: (1-p) + p/(1 - u*Lbar).
/// Diverges for u*Lbar >= 1.
double arrival_mgf(double u, const TrafficModel& traffic);

/// Effective bandwidth of the source, bits/s: ln(arrival_mgf(u)) / (u*Ts).
double effective_bandwidth(double u, const TrafficModel& traffic);

/// E[e^{-u*S}] with S the per-slot Shannon service over the Nakagami-m
/// channel. Equals 1 at u=0 or Ptx=0; strictly decreasing in both.
double laplace_service(double u, double Ptx, const SystemParams& params);

/// Effective capacity of the service, bits/s: -ln(laplace_service)/(u*Ts).
double effective_capacity(double u, double Ptx, const SystemParams& params);

/// Mean Shannon rate E[C], bits/s.
double mean_capacity(double Ptx, const SystemParams& params);

/// Mean per-slot service E[S] = Ts * E[C], bits.
double mean_service_bits(double Ptx, const SystemParams& params);

/// Root of (1-u*Lbar)/(1-(1-p)*u*Lbar) = laplace_service(u, Ptx) in
/// (0, 1/Lbar); bisection to 1e-12 on u*Lbar. Throws SolverError
/// (unstable / no_solution) when the fixed point does not exist.
QoSExponent solve_qos_exponent_for_power(double Ptx, const TrafficModel& traffic,
                                         const SystemParams& params);

/// Closed form u* = (beta-1)/((p+beta-1)*Lbar) that meets the delay-outage
/// constraint with equality.
QoSExponent qos_exponent_from_constraint(const TrafficModel& traffic,
                                         const QoSTarget& qos);

}  // namespace eeqos
