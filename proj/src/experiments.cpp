#include "eeqos/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "eeqos/csv.hpp"
#include "eeqos/delay_model.hpp"
#include "eeqos/errors.hpp"

namespace eeqos {

namespace {

/// Runs fn(0..n-1) on a small worker pool; results are indexed, so output
/// order never depends on scheduling. fn must not throw; point-level
/// failures are encoded in the row (feasible flags).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  unsigned hw = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (hw == 0) hw = 1;
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(hw, n == 0 ? 1 : n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::round((hi - lo) / step)) + 1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double v = lo + static_cast<double>(i) * step;
    if (v > hi) v = hi;
    grid.push_back(v);
  }
  return grid;
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::vector<double> default_delay_grid(double Ts, std::size_t points) {
  std::vector<double> grid;
  grid.reserve(points);
  for (std::size_t k = 0; k < points; ++k) grid.push_back(static_cast<double>(k) * Ts);
  return grid;
}

OperatingPoint resolve_operating_point(const ExperimentOptions& opt) {
  if (opt.ptx) {
    const QoSExponent u =
        solve_qos_exponent_for_power(*opt.ptx, opt.cfg.traffic, opt.cfg.sys);
    return {*opt.ptx, u.u_star};
  }
  const PowerSolution sol =
      solve_min_power(opt.cfg.traffic, opt.cfg.qos, opt.cfg.sys, opt.tol);
  return {sol.Ptx, sol.u_star};
}

void run_solve(const ExperimentOptions& opt, std::ostream& csv, std::ostream& log) {
  const PowerSolution sol =
      solve_min_power(opt.cfg.traffic, opt.cfg.qos, opt.cfg.sys, opt.tol);
  write_power_csv(csv, sol);
  log << "Ptx = " << sol.Ptx << " W (lower bound " << sol.P_l << " W), u* = "
      << sol.u_star << " 1/bits, eta = " << sol.eta << " bits/J, residual "
      << sol.residual << " in " << sol.iterations << " iterations";
  if (sol.status == SolveStatus::degenerate_no_constraint)
    log << " [degenerate: eps ~ 1 leaves only the stability constraint;"
           " power is the stability threshold plus a 0.1% margin]";
  log << '\n';
}

namespace {

SimStats simulate_at(const ExperimentOptions& opt, const OperatingPoint& op) {
  SimConfig sim;
  sim.sys = opt.cfg.sys;
  sim.traffic = opt.cfg.traffic;
  sim.Ptx = op.Ptx;
  sim.n_slots = opt.slots;
  sim.seed = opt.seed;
  sim.delay_grid_s = default_delay_grid(opt.cfg.sys.Ts, opt.ccdf_points);
  return run_simulation(sim);
}

}  // namespace

void run_simulate(const ExperimentOptions& opt, std::ostream& stats_csv,
                  std::ostream* ccdf_csv, std::ostream& log) {
  const OperatingPoint op = resolve_operating_point(opt);
  const SimStats stats = simulate_at(opt, op);
  write_stats_csv(stats_csv, stats);
  if (ccdf_csv) {
    const DelayCcdf curves[] = {stats.delay_ccdf};
    write_ccdf_csv(*ccdf_csv, curves);
  }
  log << "simulated " << stats.n_slots << " slots at Ptx = " << op.Ptx
      << " W (u* = " << op.u_star << "): p_w_hat = " << stats.p_w_hat
      << ", mean delay " << stats.mean_delay_s << " s, eta_hat = " << stats.eta_hat
      << " bits/J\n";
}

void run_ccdf_compare(const ExperimentOptions& opt, std::ostream& csv, std::ostream& log) {
  const OperatingPoint op = resolve_operating_point(opt);
  const SimStats stats = simulate_at(opt, op);
  const QoSExponent u{op.u_star};
  const std::vector<double> grid = default_delay_grid(opt.cfg.sys.Ts, opt.ccdf_points);
  const DelayCcdf curves[] = {
      stats.delay_ccdf,
      ccdf_table_proposition1(u, opt.cfg.traffic, grid),
      ccdf_table_method1(u, opt.cfg.traffic, grid),
      ccdf_table_method2(u, opt.cfg.traffic, op.Ptx, opt.cfg.sys, grid),
  };
  write_ccdf_csv(csv, curves);
  log << "ccdf-compare at Ptx = " << op.Ptx << " W, u* = " << op.u_star
      << ", pw = " << nonzero_delay_prob(u, opt.cfg.traffic) << ", "
      << stats.packets_departed << " packets\n";
}

std::vector<DelaySweepRow> sweep_delay_rows(const ExperimentOptions& opt) {
  const std::vector<double> dmax = linear_grid(opt.dmax_min_s, opt.dmax_max_s, opt.dmax_step_s);
  std::vector<DelaySweepRow> rows(dmax.size());
  parallel_for(dmax.size(), opt.threads, [&](std::size_t i) {
    DelaySweepRow row{dmax[i], kNan, kNan, kNan, false, false};
    const QoSTarget qos = make_qos(dmax[i], opt.cfg.qos.eps, opt.cfg.traffic.Ts);
    try {
      row.eta_proposed = solve_min_power(opt.cfg.traffic, qos, opt.cfg.sys, opt.tol).eta;
      row.feasible_proposed = true;
    } catch (const SolverError&) {
    }
    try {
      row.eta_method1 =
          solve_min_power_method1(opt.cfg.traffic, qos, opt.cfg.sys, opt.tol).eta;
      row.feasible_method1 = true;
    } catch (const SolverError&) {
    }
    if (row.feasible_proposed && row.feasible_method1)
      row.improvement_pct = 100.0 * (row.eta_proposed / row.eta_method1 - 1.0);
    rows[i] = row;
  });
  return rows;
}

void run_sweep_delay(const ExperimentOptions& opt, std::ostream& csv, std::ostream& log) {
  const auto rows = sweep_delay_rows(opt);
  csv << "Dmax_s,eta_proposed,eta_method1,improvement_pct,feasible_proposed,"
         "feasible_method1\n";
  double best = -std::numeric_limits<double>::infinity();
  double best_d = kNan;
  std::size_t feasible = 0;
  for (const auto& r : rows) {
    csv << fmt_g17(r.Dmax_s) << ',' << fmt_g17(r.eta_proposed) << ','
        << fmt_g17(r.eta_method1) << ',' << fmt_g17(r.improvement_pct) << ','
        << (r.feasible_proposed ? 1 : 0) << ',' << (r.feasible_method1 ? 1 : 0) << '\n';
    if (r.feasible_proposed && r.feasible_method1) {
      ++feasible;
      if (r.improvement_pct > best) {
        best = r.improvement_pct;
        best_d = r.Dmax_s;
      }
    }
  }
  log << "sweep-delay: " << rows.size() << " points, " << feasible
      << " feasible for both schemes";
  if (feasible > 0)
    log << "; max improvement " << best << "% at Dmax = " << best_d << " s";
  log << '\n';
}

std::vector<RateSweepRow> sweep_rate_rows(const ExperimentOptions& opt) {
  std::vector<double> ps = linear_grid(opt.p_min, opt.p_max, opt.p_step);
  for (double& p : ps)
    if (std::abs(p - 1.0) < 1e-12) p = 1.0;
  std::vector<RateSweepRow> rows(ps.size());
  parallel_for(ps.size(), opt.threads, [&](std::size_t i) {
    RateSweepRow row{ps[i], kNan, kNan, false};
    const TrafficModel traffic = make_traffic(ps[i], opt.cfg.traffic.Lbar, opt.cfg.traffic.Ts);
    row.mu_bits_per_s = traffic.mu;
    try {
      row.eta_bits_per_j = solve_min_power(traffic, opt.cfg.qos, opt.cfg.sys, opt.tol).eta;
      row.feasible = true;
    } catch (const SolverError&) {
    }
    rows[i] = row;
  });
  return rows;
}

void run_sweep_rate(const ExperimentOptions& opt, std::ostream& csv, std::ostream& log) {
  const auto rows = sweep_rate_rows(opt);
  csv << "p,mu_bits_per_s,eta_bits_per_j,feasible\n";
  std::size_t feasible = 0;
  for (const auto& r : rows) {
    csv << fmt_g17(r.p) << ',' << fmt_g17(r.mu_bits_per_s) << ','
        << fmt_g17(r.eta_bits_per_j) << ',' << (r.feasible ? 1 : 0) << '\n';
    if (r.feasible) ++feasible;
  }
  log << "sweep-rate: " << rows.size() << " points, " << feasible << " feasible\n";
}

}  // namespace eeqos
