#include "eeqos/delay_model.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "eeqos/csv.hpp"
#include "eeqos/errors.hpp"

namespace eeqos {

namespace {

void check_exponent(QoSExponent u, const TrafficModel& traffic) {
  const double x = u.u_star * traffic.Lbar;
  if (!(x >= 0.0) || x >= 1.0) {
    std::ostringstream msg;
    msg << "QoS exponent out of range: u*Lbar = " << x;
    throw std::domain_error(msg.str());
  }
}

double decay_ratio(QoSExponent u, const TrafficModel& traffic) {
  const double x = u.u_star * traffic.Lbar;
  return (1.0 - x) / (1.0 - x + traffic.p * x);
}

}  // namespace

std::string_view ccdf_method_name(CcdfMethod m) {
  switch (m) {
    case CcdfMethod::proposition1: return "proposition1";
    case CcdfMethod::method1_pw_one: return "method1_pw_one";
    case CcdfMethod::method2_ratio: return "method2_ratio";
    case CcdfMethod::empirical: return "empirical";
  }
  return "unknown";
}

double nonzero_delay_prob(QoSExponent u, const TrafficModel& traffic) {
  check_exponent(u, traffic);
  return decay_ratio(u, traffic);
}

double delay_ccdf_approx(QoSExponent u, const TrafficModel& traffic, double t) {
  check_exponent(u, traffic);
  if (t < 0.0) throw std::domain_error("delay_ccdf_approx: t must be non-negative");
  const double ratio = decay_ratio(u, traffic);
  return ratio * std::pow(ratio, t / traffic.Ts);
}

double delay_outage(QoSExponent u, const TrafficModel& traffic, const QoSTarget& qos) {
  check_exponent(u, traffic);
  return std::pow(decay_ratio(u, traffic), qos.Dmax / traffic.Ts + 1.0);
}

double delay_ccdf_method1(QoSExponent u, const TrafficModel& traffic, double t) {
  check_exponent(u, traffic);
  if (t < 0.0) throw std::domain_error("delay_ccdf_method1: t must be non-negative");
  return std::pow(decay_ratio(u, traffic), t / traffic.Ts);
}

double delay_ccdf_method2(QoSExponent u, const TrafficModel& traffic, double Ptx,
                          const SystemParams& params, double t) {
  check_exponent(u, traffic);
  if (t < 0.0) throw std::domain_error("delay_ccdf_method2: t must be non-negative");
  const double ec = mean_capacity(Ptx, params);
  if (!(ec > traffic.mu)) {
    std::ostringstream msg;
    msg << "method2 prefactor undefined: E[C] = " << ec << " <= mu = " << traffic.mu;
    throw SolverError(SolverFailure::unstable, msg.str());
  }
  return (traffic.mu / ec) * std::pow(decay_ratio(u, traffic), t / traffic.Ts);
}

double queue_ccdf(QoSExponent u, const TrafficModel& traffic, double B) {
  check_exponent(u, traffic);
  if (B < 0.0) throw std::domain_error("queue_ccdf: B must be non-negative");
  const double pb = 1.0 - u.u_star * traffic.Lbar;
  return pb * std::exp(-u.u_star * B);
}

double mean_delay(QoSExponent u, const TrafficModel& traffic) {
  check_exponent(u, traffic);
  const double x = u.u_star * traffic.Lbar;
  if (x == 0.0) throw std::domain_error("mean_delay: diverges at u* = 0");
  const double pw = decay_ratio(u, traffic);
  return traffic.Ts * pw * (traffic.p * x - x + 1.0) / (traffic.p * x);
}

namespace {

template <typename F>
DelayCcdf build_table(CcdfMethod method, std::span<const double> grid, F&& value) {
  DelayCcdf out;
  out.method = method;
  out.points.reserve(grid.size());
  for (double t : grid) out.points.push_back({t, value(t)});
  return out;
}

}  // namespace

DelayCcdf ccdf_table_proposition1(QoSExponent u, const TrafficModel& traffic,
                                  std::span<const double> grid) {
  return build_table(CcdfMethod::proposition1, grid,
                     [&](double t) { return delay_ccdf_approx(u, traffic, t); });
}

DelayCcdf ccdf_table_method1(QoSExponent u, const TrafficModel& traffic,
                             std::span<const double> grid) {
  return build_table(CcdfMethod::method1_pw_one, grid,
                     [&](double t) { return delay_ccdf_method1(u, traffic, t); });
}

DelayCcdf ccdf_table_method2(QoSExponent u, const TrafficModel& traffic, double Ptx,
                             const SystemParams& params, std::span<const double> grid) {
  return build_table(CcdfMethod::method2_ratio, grid, [&](double t) {
    return delay_ccdf_method2(u, traffic, Ptx, params, t);
  });
}

void write_ccdf_csv(std::ostream& os, std::span<const DelayCcdf> curves) {
  os << "t_s,prob,method\n";
  for (const auto& curve : curves)
    for (const auto& pt : curve.points)
      os << fmt_g17(pt.t) << ',' << fmt_g17(pt.prob) << ','
         << ccdf_method_name(curve.method) << '\n';
}

}  // namespace eeqos
