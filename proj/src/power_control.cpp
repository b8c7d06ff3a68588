#include "eeqos/power_control.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "eeqos/csv.hpp"
#include "eeqos/errors.hpp"

namespace eeqos {

double energy_efficiency(double Ptx, QoSExponent u, const TrafficModel& traffic,
                         const SystemParams& params) {
  const double x = u.u_star * traffic.Lbar;
  if (!(x >= 0.0) || x >= 1.0)
    throw std::domain_error("energy_efficiency: u*Lbar must lie in [0, 1)");
  if (Ptx < 0.0) throw std::domain_error("energy_efficiency: Ptx must be non-negative");
  const double den =
      Ptx + params.Pc - (Ptx - params.Pidle) * x * (1.0 - traffic.p);
  if (!(den > 0.0)) {
    std::ostringstream msg;
    msg << "energy_efficiency: non-positive mean power " << den << " W";
    throw std::domain_error(msg.str());
  }
  return traffic.mu / den;
}

double power_lower_bound(QoSExponent u, const TrafficModel& traffic,
                         const SystemParams& params) {
  const double x = u.u_star * traffic.Lbar;
  if (!(x > 0.0) || x >= 1.0)
    throw std::domain_error("power_lower_bound: u*Lbar must lie in (0, 1)");
  // The service Laplace transform exceeds the Gamma MGF
  // E[e^{-u Ts P g/(Lp N0)}] = (1 + u Ts P gamma_bar/(m Lp N0))^-m; inverting
  // that at the constraint level bounds every feasible power from below.
  const double c = params.m * params.Lp * params.N0 / (params.gamma_bar * params.Ts);
  const double inner = 1.0 + traffic.p * x / (1.0 - x);
  return c / u.u_star * (std::pow(inner, 1.0 / params.m) - 1.0);
}

double energy_efficiency_upper(QoSExponent u, const TrafficModel& traffic,
                               const SystemParams& params) {
  return energy_efficiency(power_lower_bound(u, traffic, params), u, traffic, params);
}

bool check_stability(double Ptx, const TrafficModel& traffic, const SystemParams& params) {
  return traffic.p * traffic.Lbar < mean_service_bits(Ptx, params);
}

double stability_threshold_power(const TrafficModel& traffic, const SystemParams& params) {
  const double need = traffic.p * traffic.Lbar;
  if (!(mean_service_bits(params.Pmax, params) > need)) {
    std::ostringstream msg;
    msg << "unstable even at Pmax = " << params.Pmax
        << " W: E[S] = " << mean_service_bits(params.Pmax, params)
        << " bits/slot <= p*Lbar = " << need;
    throw SolverError(SolverFailure::unstable, msg.str());
  }
  double lo = 0.0, hi = params.Pmax;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mean_service_bits(mid, params) > need)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

struct BisectionResult {
  double Ptx;
  double residual;
  int iterations;
};

/// Smallest power with laplace_service(u, P) <= target. The constraint is
/// violated at Ps and satisfied at Pu throughout.
BisectionResult solve_power_for_target(double u, double target,
                                       const TrafficModel& traffic,
                                       const SystemParams& params, double tol) {
  const auto gap = [&](double P) { return laplace_service(u, P, params) - target; };

  const double at_pmax = gap(params.Pmax);
  if (at_pmax > tol) {
    std::ostringstream msg;
    msg << "infeasible: |laplace_service(u*, Pmax) - target| = " << at_pmax
        << " > tol = " << tol << " at Pmax = " << params.Pmax << " W";
    throw SolverError(SolverFailure::infeasible, msg.str());
  }

  const double p_l = power_lower_bound(QoSExponent{u}, traffic, params);
  const double p_stab = stability_threshold_power(traffic, params);
  double ps = std::min(std::max(p_l * (1.0 + 1e-12), p_stab),
                       params.Pmax * (1.0 - 1e-12));
  double pu = params.Pmax;
  const double at_ps = gap(ps);
  if (at_ps <= 0.0) return {ps, std::abs(at_ps), 0};  // root at the bracket edge

  int iterations = 0;
  for (;;) {
    if (++iterations > 200) {
      std::ostringstream msg;
      msg << "bisection did not converge in 200 iterations: bracket [" << ps << ", "
          << pu << "] W, residual " << gap(0.5 * (ps + pu));
      throw SolverError(SolverFailure::max_iterations, msg.str());
    }
    const double p = 0.5 * (ps + pu);
    const double r = gap(p);
    if (std::abs(r) <= tol) return {p, std::abs(r), iterations};
    if (r > 0.0)
      ps = p;
    else
      pu = p;
    if (pu - ps < 1e-9) {
      const double r_u = gap(pu);
      if (std::abs(r_u) > tol) {
        std::ostringstream msg;
        msg << "bracket shrank below 1e-9 W with residual " << std::abs(r_u)
            << " > tol = " << tol;
        throw SolverError(SolverFailure::max_iterations, msg.str());
      }
      return {pu, std::abs(r_u), iterations};
    }
  }
}

/// eps ~ 1 leaves only stability: smallest stabilizing power plus a 0.1%
/// margin, capped at Pmax.
PowerSolution degenerate_solution(const TrafficModel& traffic, const SystemParams& params) {
  const double p_stab = stability_threshold_power(traffic, params);
  PowerSolution sol;
  sol.Ptx = std::min(p_stab * 1.001, params.Pmax);
  sol.u_star = 0.0;
  sol.eta = energy_efficiency(sol.Ptx, QoSExponent{0.0}, traffic, params);
  sol.P_l = 0.0;
  sol.residual = 0.0;
  sol.iterations = 0;
  sol.feasible = true;
  sol.status = SolveStatus::degenerate_no_constraint;
  return sol;
}

PowerSolution finish_solution(double u, double target, const TrafficModel& traffic,
                              const SystemParams& params, double tol, bool single_mode_eta) {
  const BisectionResult res = solve_power_for_target(u, target, traffic, params, tol);
  if (!check_stability(res.Ptx, traffic, params)) {
    std::ostringstream msg;
    msg << "solution Ptx = " << res.Ptx << " W violates stability";
    throw SolverError(SolverFailure::unstable, msg.str());
  }
  PowerSolution sol;
  sol.Ptx = res.Ptx;
  sol.u_star = u;
  sol.eta = energy_efficiency(res.Ptx, QoSExponent{single_mode_eta ? 0.0 : u}, traffic,
                              params);
  sol.P_l = power_lower_bound(QoSExponent{u}, traffic, params);
  sol.residual = res.residual;
  sol.iterations = res.iterations;
  sol.feasible = true;
  sol.status = SolveStatus::ok;
  return sol;
}

}  // namespace

PowerSolution solve_min_power(const TrafficModel& traffic, const QoSTarget& qos,
                              const SystemParams& params, double tol) {
  const QoSExponent u = qos_exponent_from_constraint(traffic, qos);
  if (u.u_star == 0.0) return degenerate_solution(traffic, params);
  return finish_solution(u.u_star, 1.0 / qos.beta, traffic, params, tol,
                         /*single_mode_eta=*/false);
}

PowerSolution solve_min_power_method1(const TrafficModel& traffic, const QoSTarget& qos,
                                      const SystemParams& params, double tol) {
  // pw = 1 turns the outage constraint into ratio^(Dmax/Ts) = eps, one slot
  // harsher than the proposition-1 exponent.
  const double beta1 = std::pow(qos.eps, -traffic.Ts / qos.Dmax);
  if (beta1 == 1.0) return degenerate_solution(traffic, params);
  const double u1 = (beta1 - 1.0) / ((traffic.p + beta1 - 1.0) * traffic.Lbar);
  // The believed exponent is 0 (pw = 1), so the scheme evaluates itself with
  // the single-mode efficiency.
  return finish_solution(u1, 1.0 / beta1, traffic, params, tol, /*single_mode_eta=*/true);
}

void write_power_csv(std::ostream& os, const PowerSolution& sol) {
  os << "Ptx_w,u_star,eta_bits_per_j,P_l_w,residual,iterations,feasible\n"
     << fmt_g17(sol.Ptx) << ',' << fmt_g17(sol.u_star) << ',' << fmt_g17(sol.eta)
     << ',' << fmt_g17(sol.P_l) << ',' << fmt_g17(sol.residual) << ','
     << sol.iterations << ',' << (sol.feasible ? 1 : 0) << '\n';
}

}  // namespace eeqos
