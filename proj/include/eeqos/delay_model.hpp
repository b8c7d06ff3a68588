#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "eeqos/effcap.hpp"
#include "eeqos/params.hpp"

namespace eeqos {

enum class CcdfMethod { proposition1, method1_pw_one, method2_ratio, empirical };

std::string_view ccdf_method_name(CcdfMethod m);

struct CcdfPoint {
  double t;     // delay bound, s (or backlog, bits, for the queue tail)
  double prob;  // P(X > t)
};

struct DelayCcdf {
  std::vector<CcdfPoint> points;  // t strictly increasing, prob non-increasing
  CcdfMethod method = CcdfMethod::proposition1;
};

/// pw = P(D > 0) = (1 - u*Lbar) / (1 - u*Lbar + p*u*Lbar).
double nonzero_delay_prob(QoSExponent u, const TrafficModel& traffic);

/// P(D > t) ~= pw * ratio^(t/Ts); the per-slot ratio equals pw itself.
double delay_ccdf_approx(QoSExponent u, const TrafficModel& traffic, double t);

/// P(D > Dmax) ~= pw^(Dmax/Ts + 1), the constraint used to derive the
/// closed-form exponent. Equals delay_ccdf_approx evaluated at Dmax + Ts.
double delay_outage(QoSExponent u, const TrafficModel& traffic, const QoSTarget& qos);

/// Comparison method 1: prefactor forced to 1. Upper-bounds proposition 1.
double delay_ccdf_method1(QoSExponent u, const TrafficModel& traffic, double t);

/// Comparison method 2: prefactor mu/E[C]. Requires E[C] > mu.
double delay_ccdf_method2(QoSExponent u, const TrafficModel& traffic, double Ptx,
                          const SystemParams& params, double t);

/// P(Q > B) ~= (1 - u*Lbar) * exp(-u*B).
double queue_ccdf(QoSExponent u, const TrafficModel& traffic, double B);

/// Mean per-packet delay Ts*pw*(1 - u*Lbar + p*u*Lbar)/(p*u*Lbar), s.
/// Satisfies mean_delay * mu = (1 - u*Lbar)/u*. Diverges at u* = 0.
double mean_delay(QoSExponent u, const TrafficModel& traffic);

DelayCcdf ccdf_table_proposition1(QoSExponent u, const TrafficModel& traffic,
                                  std::span<const double> grid);
DelayCcdf ccdf_table_method1(QoSExponent u, const TrafficModel& traffic,
                             std::span<const double> grid);
DelayCcdf ccdf_table_method2(QoSExponent u, const TrafficModel& traffic, double Ptx,
                             const SystemParams& params, std::span<const double> grid);

/// Long-format CSV: header "t_s,prob,method", one row per point per curve.
void write_ccdf_csv(std::ostream& os, std::span<const DelayCcdf> curves);

}  // namespace eeqos
