#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "eeqos/delay_model.hpp"
#include "eeqos/power_control.hpp"
#include "oracles.hpp"

using namespace eeqos;

namespace {
const SystemParams kSys = test::table1_params();
const TrafficModel kTraffic = make_traffic(0.5, 1488, 1e-3);
const QoSTarget kQos = make_qos(10e-3, 0.01, 1e-3);
}  // namespace

TEST_CASE("energy efficiency forms") {
  const double P = 0.2;
  CHECK(energy_efficiency(P, QoSExponent{0.0}, kTraffic, kSys) ==
        doctest::Approx(kTraffic.mu / (P + kSys.Pc)).epsilon(1e-14));
  // p = 1 kills the idle term regardless of the exponent
  const TrafficModel t1 = make_traffic(1.0, 1488, 1e-3);
  CHECK(energy_efficiency(P, QoSExponent{4e-4}, t1, kSys) ==
        doctest::Approx(t1.mu / (P + kSys.Pc)).epsilon(1e-14));
  // two equivalent groupings of the mean power
  const QoSExponent u{3e-4};
  const double x = u.u_star * kTraffic.Lbar;
  const double p_idle = x * (1.0 - kTraffic.p);
  const double den = P * (1.0 - p_idle) + kSys.Pidle * p_idle + kSys.Pc;
  CHECK(energy_efficiency(P, u, kTraffic, kSys) ==
        doctest::Approx(kTraffic.mu / den).epsilon(1e-14));
  CHECK_THROWS_AS(energy_efficiency(P, QoSExponent{1.0 / 1488.0}, kTraffic, kSys),
                  std::domain_error);
}

TEST_CASE("power lower bound: shape collapse and vanishing-exponent limit") {
  CHECK_THROWS_AS(power_lower_bound(QoSExponent{0.0}, kTraffic, kSys),
                  std::domain_error);
  // m = 1: the (.)^(1/m)-1 factor collapses to p*x/(1-x)
  const SystemParams sys1 =
      make_system_params(1e-3, 180e3, kSys.N0, 1.0, 10.0, 1.0, 0.1, 0.03, 10.0);
  const QoSExponent u{3e-4};
  const double x = u.u_star * kTraffic.Lbar;
  const double direct = sys1.Lp * sys1.N0 / (sys1.gamma_bar * sys1.Ts) / u.u_star *
                        (kTraffic.p * x / (1.0 - x));
  CHECK(power_lower_bound(u, kTraffic, sys1) == doctest::Approx(direct).epsilon(1e-14));
  // u* -> 0: first-order expansion gives Lp*N0*p*Lbar/(gamma_bar*Ts)
  const double limit =
      kSys.Lp * kSys.N0 * kTraffic.p * kTraffic.Lbar / (kSys.gamma_bar * kSys.Ts);
  CHECK(power_lower_bound(QoSExponent{1e-10 / 1488.0}, kTraffic, kSys) ==
        doctest::Approx(limit).epsilon(1e-5));
}

TEST_CASE("efficiency upper bound") {
  const QoSExponent u{3e-4};
  const double pl = power_lower_bound(u, kTraffic, kSys);
  CHECK(energy_efficiency_upper(u, kTraffic, kSys) ==
        doctest::Approx(energy_efficiency(pl, u, kTraffic, kSys)).epsilon(1e-14));
  const PowerSolution sol = solve_min_power(kTraffic, kQos, kSys);
  CHECK(energy_efficiency_upper(QoSExponent{sol.u_star}, kTraffic, kSys) > sol.eta);
  // hypothetical Pidle = P_l: the two-mode terms cancel
  const double pl_sol = power_lower_bound(QoSExponent{sol.u_star}, kTraffic, kSys);
  const SystemParams sys_eq =
      make_system_params(1e-3, 180e3, kSys.N0, 2.0, 10.0, 1.0, 0.1, pl_sol, 10.0);
  CHECK(energy_efficiency_upper(QoSExponent{sol.u_star}, kTraffic, sys_eq) ==
        doctest::Approx(kTraffic.mu / (pl_sol + kSys.Pc)).epsilon(1e-12));
}

TEST_CASE("stability check and threshold") {
  CHECK_FALSE(check_stability(0.0, kTraffic, kSys));
  CHECK(check_stability(10.0, kTraffic, kSys));
  const double thr = stability_threshold_power(kTraffic, kSys);
  CHECK_FALSE(check_stability(thr * (1.0 - 1e-6), kTraffic, kSys));
  CHECK(check_stability(thr * (1.0 + 1e-6), kTraffic, kSys));
  // E[S] at the threshold equals the mean arrival to solver precision
  CHECK(mean_service_bits(thr, kSys) ==
        doctest::Approx(kTraffic.p * kTraffic.Lbar).epsilon(1e-9));
  // a link that cannot be stabilized at all
  const TrafficModel flood = make_traffic(1.0, 5e6, 1e-3);
  CHECK_THROWS_AS(stability_threshold_power(flood, kSys), SolverError);
}

TEST_CASE("minimum-power solve at the reference point") {
  const PowerSolution sol = solve_min_power(kTraffic, kQos, kSys);
  CHECK(sol.feasible);
  CHECK(sol.status == SolveStatus::ok);
  CHECK(sol.residual <= 1e-6);
  CHECK(sol.Ptx > sol.P_l);
  CHECK(sol.Ptx <= kSys.Pmax);
  CHECK(std::abs(laplace_service(sol.u_star, sol.Ptx, kSys) - 1.0 / kQos.beta) <=
        1e-6);
  // constraint equality carried back through the delay model
  CHECK(delay_outage(QoSExponent{sol.u_star}, kTraffic, kQos) ==
        doctest::Approx(kQos.eps).epsilon(1e-8));
  // the 1024-point grid oracle brackets the solver's answer
  const auto bracket = test::grid_min_feasible_power(
      sol.u_star, 1.0 / kQos.beta, kSys,
      [](double u, double P, const SystemParams& s) { return laplace_service(u, P, s); });
  CHECK(sol.Ptx > bracket.below);
  CHECK(sol.Ptx <= bracket.at);
  CHECK(check_stability(sol.Ptx, kTraffic, kSys));
}

TEST_CASE("solve determinism: identical inputs give bit-identical solutions") {
  const PowerSolution a = solve_min_power(kTraffic, kQos, kSys);
  const PowerSolution b = solve_min_power(kTraffic, kQos, kSys);
  CHECK(std::memcmp(&a.Ptx, &b.Ptx, sizeof a.Ptx) == 0);
  CHECK(std::memcmp(&a.u_star, &b.u_star, sizeof a.u_star) == 0);
  CHECK(std::memcmp(&a.eta, &b.eta, sizeof a.eta) == 0);
  CHECK(std::memcmp(&a.P_l, &b.P_l, sizeof a.P_l) == 0);
  CHECK(std::memcmp(&a.residual, &b.residual, sizeof a.residual) == 0);
  CHECK(a.iterations == b.iterations);
  CHECK(a.feasible == b.feasible);
}

TEST_CASE("infeasible target reported as such") {
  const SystemParams tiny =
      make_system_params(1e-3, 180e3, kSys.N0, 2.0, 10.0, 1.0, 0.1, 0.0005, 0.001);
  const QoSTarget harsh = make_qos(1e-3, 1e-9, 1e-3);
  CHECK_THROWS_AS(solve_min_power(kTraffic, harsh, tiny), SolverError);
  try {
    solve_min_power(kTraffic, harsh, tiny);
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverFailure::infeasible);
  }
}

TEST_CASE("degenerate target: beta = 1 leaves only stability") {
  const QoSTarget vac{10e-3, 1.0 - 1e-16, 1.0};  // beta rounds to 1
  const PowerSolution sol = solve_min_power(kTraffic, vac, kSys);
  CHECK(sol.status == SolveStatus::degenerate_no_constraint);
  CHECK(sol.u_star == 0.0);
  CHECK(sol.feasible);
  const double thr = stability_threshold_power(kTraffic, kSys);
  CHECK(sol.Ptx == doctest::Approx(thr * 1.001).epsilon(1e-12));
  CHECK(check_stability(sol.Ptx, kTraffic, kSys));
  CHECK(sol.eta == doctest::Approx(kTraffic.mu / (sol.Ptx + kSys.Pc)).epsilon(1e-12));
}

TEST_CASE("method-1 scheme: higher exponent, more power, single-mode eta") {
  const PowerSolution prop = solve_min_power(kTraffic, kQos, kSys);
  const PowerSolution m1 = solve_min_power_method1(kTraffic, kQos, kSys);
  CHECK(m1.u_star > prop.u_star);
  CHECK(m1.Ptx > prop.Ptx);
  CHECK(m1.eta == doctest::Approx(kTraffic.mu / (m1.Ptx + kSys.Pc)).epsilon(1e-12));
  CHECK(prop.eta > m1.eta);
  // shifting the bound by one slot reproduces the proposed solve exactly:
  // eps^(-Ts/Dmax) at Dmax equals eps^(-Ts/(D'+Ts)) at D' = Dmax - Ts
  const QoSTarget shifted = make_qos(kQos.Dmax - 1e-3, kQos.eps, 1e-3);
  const PowerSolution prop_shifted = solve_min_power(kTraffic, shifted, kSys);
  CHECK(m1.Ptx == doctest::Approx(prop_shifted.Ptx).epsilon(1e-12));
  CHECK(m1.u_star == doctest::Approx(prop_shifted.u_star).epsilon(1e-12));
}

TEST_CASE("min power attains max efficiency among feasible grid powers") {
  const PowerSolution sol = solve_min_power(kTraffic, kQos, kSys);
  const QoSExponent u{sol.u_star};
  double best_eta = -1.0, best_P = 0.0;
  for (int i = 0; i < 256; ++i) {
    const double P =
        1e-4 * std::pow(kSys.Pmax / 1e-4, static_cast<double>(i) / 255.0);
    if (laplace_service(sol.u_star, P, kSys) <= 1.0 / kQos.beta) {
      const double eta = energy_efficiency(P, u, kTraffic, kSys);
      if (eta > best_eta) {
        best_eta = eta;
        best_P = P;
      }
    }
  }
  CHECK(best_P <= sol.Ptx * 1.05);  // the best grid point is the smallest feasible
  CHECK(best_eta <= sol.eta * (1.0 + 1e-6));
}

TEST_CASE("efficiency decreases along the fixed-point curve (spot check)") {
  const TrafficModel t = make_traffic(0.5, 700, 1e-3);
  const double thr = stability_threshold_power(t, kSys);
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    const double P = thr * 1.05 * std::pow(kSys.Pmax / (thr * 1.05), i / 9.0);
    const QoSExponent u = solve_qos_exponent_for_power(P, t, kSys);
    const double eta = energy_efficiency(P, u, t, kSys);
    CHECK(eta < prev);
    prev = eta;
  }
}

TEST_CASE("power CSV row") {
  const PowerSolution sol = solve_min_power(kTraffic, kQos, kSys);
  std::ostringstream os;
  write_power_csv(os, sol);
  const std::string csv = os.str();
  CHECK(csv.rfind("Ptx_w,u_star,eta_bits_per_j,P_l_w,residual,iterations,feasible\n",
                  0) == 0);
  CHECK(csv.back() == '\n');
  CHECK(csv.find(",1\n") != std::string::npos);  // feasible flag
}
