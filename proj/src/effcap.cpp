#include "eeqos/effcap.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "eeqos/errors.hpp"
#include "eeqos/quadrature.hpp"

namespace eeqos {

namespace {

void check_mgf_domain(double u, const TrafficModel& traffic) {
  if (u * traffic.Lbar >= 1.0) {
    std::ostringstream msg;
    msg << "arrival MGF diverges: u*Lbar = " << u * traffic.Lbar << " >= 1";
    throw std::domain_error(msg.str());
  }
}

}  // namespace

double arrival_mgf(double u, const TrafficModel& traffic) {
  check_mgf_domain(u, traffic);
  return (1.0 - traffic.p) + traffic.p / (1.0 - u * traffic.Lbar);
}

double effective_bandwidth(double u, const TrafficModel& traffic) {
  if (!(u > 0.0)) throw std::domain_error("effective_bandwidth: u must be positive");
  return std::log(arrival_mgf(u, traffic)) / (u * traffic.Ts);
}

double laplace_service(double u, double Ptx, const SystemParams& params) {
  if (u < 0.0) throw std::domain_error("laplace_service: u must be non-negative");
  if (Ptx < 0.0) throw std::domain_error("laplace_service: Ptx must be non-negative");
  if (u == 0.0 || Ptx == 0.0) return 1.0;
  // e^{-u Ts Bc log2(1 + Ptx g / (Lp N0 Bc))} = (1 + Ptx g/(Lp N0 Bc))^(-u*phi)
  const double phi = params.Ts * params.Bc / std::numbers::ln2;
  const double snr_gain = Ptx / (params.Lp * params.N0 * params.Bc);
  const double c = u * phi;
  return nakagami_expectation(
      params, [&](double g) { return std::exp(-c * std::log1p(snr_gain * g)); });
}

double effective_capacity(double u, double Ptx, const SystemParams& params) {
  if (!(u > 0.0)) throw std::domain_error("effective_capacity: u must be positive");
  if (!(Ptx > 0.0)) throw std::domain_error("effective_capacity: Ptx must be positive");
  return -std::log(laplace_service(u, Ptx, params)) / (u * params.Ts);
}

double mean_capacity(double Ptx, const SystemParams& params) {
  if (Ptx < 0.0) throw std::domain_error("mean_capacity: Ptx must be non-negative");
  if (Ptx == 0.0) return 0.0;
  const double snr_gain = Ptx / (params.Lp * params.N0 * params.Bc);
  return params.Bc *
         nakagami_expectation(params, [&](double g) {
           return std::log1p(snr_gain * g) / std::numbers::ln2;
         });
}

double mean_service_bits(double Ptx, const SystemParams& params) {
  return params.Ts * mean_capacity(Ptx, params);
}

QoSExponent solve_qos_exponent_for_power(double Ptx, const TrafficModel& traffic,
                                         const SystemParams& params) {
  const double es = mean_service_bits(Ptx, params);
  if (!(traffic.p * traffic.Lbar < es)) {
    std::ostringstream msg;
    msg << "unstable: p*Lbar = " << traffic.p * traffic.Lbar
        << " bits/slot >= E[S] = " << es << " bits/slot at Ptx = " << Ptx << " W";
    throw SolverError(SolverFailure::unstable, msg.str());
  }
  // lhs - rhs is positive just above 0 under stability and negative as
  // u*Lbar -> 1; bisect on the sign change.
  const auto gap = [&](double u) {
    const double x = u * traffic.Lbar;
    const double lhs = (1.0 - x) / (1.0 - (1.0 - traffic.p) * x);
    return lhs - laplace_service(u, Ptx, params);
  };
  double lo = 1e-12 / traffic.Lbar;
  double hi = (1.0 - 1e-12) / traffic.Lbar;
  double glo = gap(lo);
  double ghi = gap(hi);
  if (!(glo > 0.0) || !(ghi < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change in (0, 1/Lbar): gap(" << lo << ") = " << glo << ", gap("
        << hi << ") = " << ghi;
    throw SolverError(SolverFailure::no_solution, msg.str());
  }
  while ((hi - lo) * traffic.Lbar > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return QoSExponent{0.5 * (lo + hi)};
}

QoSExponent qos_exponent_from_constraint(const TrafficModel& traffic,
                                         const QoSTarget& qos) {
  const double b = qos.beta;
  return QoSExponent{(b - 1.0) / ((traffic.p + b - 1.0) * traffic.Lbar)};
}

}  // namespace eeqos
