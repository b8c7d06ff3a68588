// eeqos: energy-optimal constant transmission power under a statistical
// delay-outage constraint, plus the discrete-time queue simulator that
// validates the analytic curves. Emits CSV; plotting is external.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "eeqos/errors.hpp"
#include "eeqos/experiments.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

struct CliArgs {
  std::string config_path;
  std::string out_path = "-";
  std::string ccdf_out_path;
  std::vector<std::string> overrides;
  double ptx = 0.0;
  bool ptx_set = false;
  eeqos::ExperimentOptions opt;
  double dmax_min_ms = 2.0, dmax_max_ms = 100.0, dmax_step_ms = 1.0;
};

void add_common(CLI::App* cmd, CliArgs& a) {
  cmd->add_option("--config", a.config_path, "configuration file (key=value lines)")
      ->required();
  cmd->add_option("--out", a.out_path, "output CSV path ('-' for stdout)");
  cmd->add_option("--seed", a.opt.seed, "simulation seed");
  cmd->add_option("--slots", a.opt.slots, "simulated slots");
  cmd->add_option("--set", a.overrides, "override a config key, key=value")
      ->take_all();
  cmd->add_option("--tol", a.opt.tol, "solver tolerance on the constraint residual");
  cmd->add_option("--threads", a.opt.threads, "worker threads for sweeps (0 = auto)");
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path == "-" || path.empty()) return std::cout;
  file.open(path);
  if (!file) throw eeqos::ConfigError("cannot open output file '" + path + "'");
  return file;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw eeqos::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-efficient power control under delay-outage constraints"};
  app.require_subcommand(1);

  CliArgs a;
  CLI::App* solve = app.add_subcommand("solve", "minimum-power solution for the config's QoS target");
  CLI::App* simulate = app.add_subcommand("simulate", "run the queue simulator at the solved (or given) power");
  CLI::App* ccdf = app.add_subcommand("ccdf-compare", "empirical vs analytic delay CCDF curves");
  CLI::App* sweep_delay = app.add_subcommand("sweep-delay", "efficiency of both schemes over a delay-bound grid");
  CLI::App* sweep_rate = app.add_subcommand("sweep-rate", "optimal efficiency over an arrival-probability grid");
  for (CLI::App* cmd : {solve, simulate, ccdf, sweep_delay, sweep_rate}) add_common(cmd, a);

  for (CLI::App* cmd : {simulate, ccdf}) {
    cmd->add_option("--ptx", a.ptx, "fixed transmission power in W (default: solve for it)")
        ->each([&a](const std::string&) { a.ptx_set = true; });
    cmd->add_option("--ccdf-points", a.opt.ccdf_points, "delay grid length in slots");
  }
  simulate->add_option("--ccdf-out", a.ccdf_out_path, "also write the empirical CCDF to this CSV");
  sweep_delay->add_option("--dmax-min-ms", a.dmax_min_ms, "sweep start, ms");
  sweep_delay->add_option("--dmax-max-ms", a.dmax_max_ms, "sweep end, ms");
  sweep_delay->add_option("--dmax-step-ms", a.dmax_step_ms, "sweep step, ms");
  sweep_rate->add_option("--p-min", a.opt.p_min, "sweep start");
  sweep_rate->add_option("--p-max", a.opt.p_max, "sweep end");
  sweep_rate->add_option("--p-step", a.opt.p_step, "sweep step");

  CLI11_PARSE(app, argc, argv);

  try {
    a.opt.cfg = eeqos::parse_config(read_file(a.config_path), a.overrides);
    if (a.ptx_set) a.opt.ptx = a.ptx;
    a.opt.dmax_min_s = a.dmax_min_ms * 1e-3;
    a.opt.dmax_max_s = a.dmax_max_ms * 1e-3;
    a.opt.dmax_step_s = a.dmax_step_ms * 1e-3;

    std::ofstream out_file;
    std::ostream& out = open_out(a.out_path, out_file);

    if (solve->parsed()) {
      eeqos::run_solve(a.opt, out, std::cerr);
    } else if (simulate->parsed()) {
      std::ofstream ccdf_file;
      std::ostream* ccdf_os = nullptr;
      if (!a.ccdf_out_path.empty()) ccdf_os = &open_out(a.ccdf_out_path, ccdf_file);
      eeqos::run_simulate(a.opt, out, ccdf_os, std::cerr);
    } else if (ccdf->parsed()) {
      eeqos::run_ccdf_compare(a.opt, out, std::cerr);
    } else if (sweep_delay->parsed()) {
      eeqos::run_sweep_delay(a.opt, out, std::cerr);
    } else if (sweep_rate->parsed()) {
      eeqos::run_sweep_rate(a.opt, out, std::cerr);
    }
    return 0;
  } catch (const eeqos::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const eeqos::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    const bool unreachable = e.kind() == eeqos::SolverFailure::infeasible ||
                             e.kind() == eeqos::SolverFailure::unstable;
    return unreachable ? kExitInfeasible : kExitNumerical;
  } catch (const eeqos::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
