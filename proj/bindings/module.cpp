#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eeqos/delay_model.hpp"
#include "eeqos/effcap.hpp"
#include "eeqos/errors.hpp"
#include "eeqos/params.hpp"
#include "eeqos/power_control.hpp"
#include "eeqos/simulator.hpp"
#include "eeqos/units.hpp"

namespace py = pybind11;
using namespace eeqos;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Energy-efficient power control under delay-outage constraints: "
            "effective bandwidth/capacity, minimum-power solver and the "
            "block-fading queue simulator.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<SystemParams>(m, "SystemParams")
      .def_readonly("Ts", &SystemParams::Ts)
      .def_readonly("Bc", &SystemParams::Bc)
      .def_readonly("N0", &SystemParams::N0)
      .def_readonly("m", &SystemParams::m)
      .def_readonly("gamma_bar", &SystemParams::gamma_bar)
      .def_readonly("d_km", &SystemParams::d_km)
      .def_readonly("Lp", &SystemParams::Lp)
      .def_readonly("Pc", &SystemParams::Pc)
      .def_readonly("Pidle", &SystemParams::Pidle)
      .def_readonly("Pmax", &SystemParams::Pmax);

  py::class_<TrafficModel>(m, "TrafficModel")
      .def_readonly("p", &TrafficModel::p)
      .def_readonly("Lbar", &TrafficModel::Lbar)
      .def_readonly("Ts", &TrafficModel::Ts)
      .def_readonly("mu", &TrafficModel::mu);

  py::class_<QoSTarget>(m, "QoSTarget")
      .def_readonly("Dmax", &QoSTarget::Dmax)
      .def_readonly("eps", &QoSTarget::eps)
      .def_readonly("beta", &QoSTarget::beta);

  py::class_<Config>(m, "Config")
      .def_readonly("sys", &Config::sys)
      .def_readonly("traffic", &Config::traffic)
      .def_readonly("qos", &Config::qos);

  py::class_<PowerSolution>(m, "PowerSolution")
      .def_readonly("Ptx", &PowerSolution::Ptx)
      .def_readonly("u_star", &PowerSolution::u_star)
      .def_readonly("eta", &PowerSolution::eta)
      .def_readonly("P_l", &PowerSolution::P_l)
      .def_readonly("residual", &PowerSolution::residual)
      .def_readonly("iterations", &PowerSolution::iterations)
      .def_readonly("feasible", &PowerSolution::feasible)
      .def_property_readonly("degenerate", [](const PowerSolution& s) {
        return s.status == SolveStatus::degenerate_no_constraint;
      });

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init([](const SystemParams& sys, const TrafficModel& traffic, double Ptx,
                       std::uint64_t n_slots, std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t discard_slots, std::vector<double> delay_grid_s,
                       std::vector<double> queue_grid_bits) {
             SimConfig c;
             c.sys = sys;
             c.traffic = traffic;
             c.Ptx = Ptx;
             c.n_slots = n_slots;
             c.seed = seed;
             c.stream = stream;
             c.discard_slots = discard_slots;
             c.delay_grid_s = std::move(delay_grid_s);
             c.queue_grid_bits = std::move(queue_grid_bits);
             return c;
           }),
           py::arg("sys"), py::arg("traffic"), py::arg("Ptx"), py::arg("n_slots"),
           py::arg("seed") = 1, py::arg("stream") = 0, py::arg("discard_slots") = 0,
           py::arg("delay_grid_s") = std::vector<double>{},
           py::arg("queue_grid_bits") = std::vector<double>{});

  py::class_<SimStats>(m, "SimStats")
      .def_property_readonly("delay_ccdf",
                             [](const SimStats& s) {
                               std::vector<std::pair<double, double>> pts;
                               for (const auto& p : s.delay_ccdf.points)
                                 pts.emplace_back(p.t, p.prob);
                               return pts;
                             })
      .def_property_readonly("queue_ccdf",
                             [](const SimStats& s) {
                               std::vector<std::pair<double, double>> pts;
                               for (const auto& p : s.queue_ccdf)
                                 pts.emplace_back(p.t, p.prob);
                               return pts;
                             })
      .def_readonly("p_tx_hat", &SimStats::p_tx_hat)
      .def_readonly("p_idle_hat", &SimStats::p_idle_hat)
      .def_readonly("p_w_hat", &SimStats::p_w_hat)
      .def_readonly("p_b_hat", &SimStats::p_b_hat)
      .def_readonly("mean_delay_s", &SimStats::mean_delay_s)
      .def_readonly("mean_queue_bits", &SimStats::mean_queue_bits)
      .def_readonly("mu_hat", &SimStats::mu_hat)
      .def_readonly("eta_hat", &SimStats::eta_hat)
      .def_readonly("arrived_bits", &SimStats::arrived_bits)
      .def_readonly("served_bits", &SimStats::served_bits)
      .def_readonly("final_queue_bits", &SimStats::final_queue_bits)
      .def_readonly("packets_arrived", &SimStats::packets_arrived)
      .def_readonly("packets_departed", &SimStats::packets_departed)
      .def_readonly("n_slots", &SimStats::n_slots)
      .def_readonly("seed", &SimStats::seed);

  m.def("db_to_linear", &db_to_linear, py::arg("db"));
  m.def("linear_to_db", &linear_to_db, py::arg("x"));
  m.def("dbm_to_watts", &dbm_to_watts, py::arg("dbm"));
  m.def("watts_to_dbm", &watts_to_dbm, py::arg("w"));
  m.def("path_loss_db", &path_loss_db, py::arg("d_km"),
        "Macro-cell path loss 128.1 + 37.6*log10(d_km), dB");

  m.def("make_system_params", &make_system_params, py::arg("Ts"), py::arg("Bc"),
        py::arg("N0_w_hz"), py::arg("m"), py::arg("gamma_bar_lin"), py::arg("d_km"),
        py::arg("Pc"), py::arg("Pidle"), py::arg("Pmax") = 10.0);
  m.def("make_traffic", &make_traffic, py::arg("p"), py::arg("Lbar"), py::arg("Ts"));
  m.def("make_qos", &make_qos, py::arg("Dmax"), py::arg("eps"), py::arg("Ts"));
  m.def(
      "parse_config",
      [](const std::string& text, const std::vector<std::string>& overrides) {
        return parse_config(text, overrides);
      },
      py::arg("text"), py::arg("overrides") = std::vector<std::string>{});

  m.def("arrival_mgf", &arrival_mgf, py::arg("u"), py::arg("traffic"));
  m.def("effective_bandwidth", &effective_bandwidth, py::arg("u"), py::arg("traffic"));
  m.def("laplace_service", &laplace_service, py::arg("u"), py::arg("Ptx"),
        py::arg("params"));
  m.def("effective_capacity", &effective_capacity, py::arg("u"), py::arg("Ptx"),
        py::arg("params"));
  m.def("mean_capacity", &mean_capacity, py::arg("Ptx"), py::arg("params"));
  m.def("mean_service_bits", &mean_service_bits, py::arg("Ptx"), py::arg("params"));
  m.def(
      "solve_qos_exponent_for_power",
      [](double Ptx, const TrafficModel& t, const SystemParams& s) {
        return solve_qos_exponent_for_power(Ptx, t, s).u_star;
      },
      py::arg("Ptx"), py::arg("traffic"), py::arg("params"));
  m.def(
      "qos_exponent_from_constraint",
      [](const TrafficModel& t, const QoSTarget& q) {
        return qos_exponent_from_constraint(t, q).u_star;
      },
      py::arg("traffic"), py::arg("qos"));

  m.def(
      "nonzero_delay_prob",
      [](double u, const TrafficModel& t) { return nonzero_delay_prob(QoSExponent{u}, t); },
      py::arg("u_star"), py::arg("traffic"));
  m.def(
      "delay_ccdf_approx",
      [](double u, const TrafficModel& t, double tt) {
        return delay_ccdf_approx(QoSExponent{u}, t, tt);
      },
      py::arg("u_star"), py::arg("traffic"), py::arg("t"));
  m.def(
      "delay_outage",
      [](double u, const TrafficModel& t, const QoSTarget& q) {
        return delay_outage(QoSExponent{u}, t, q);
      },
      py::arg("u_star"), py::arg("traffic"), py::arg("qos"));
  m.def(
      "delay_ccdf_method1",
      [](double u, const TrafficModel& t, double tt) {
        return delay_ccdf_method1(QoSExponent{u}, t, tt);
      },
      py::arg("u_star"), py::arg("traffic"), py::arg("t"));
  m.def(
      "delay_ccdf_method2",
      [](double u, const TrafficModel& t, double Ptx, const SystemParams& s, double tt) {
        return delay_ccdf_method2(QoSExponent{u}, t, Ptx, s, tt);
      },
      py::arg("u_star"), py::arg("traffic"), py::arg("Ptx"), py::arg("params"),
      py::arg("t"));
  m.def(
      "queue_ccdf",
      [](double u, const TrafficModel& t, double B) {
        return queue_ccdf(QoSExponent{u}, t, B);
      },
      py::arg("u_star"), py::arg("traffic"), py::arg("B"));
  m.def(
      "mean_delay",
      [](double u, const TrafficModel& t) { return mean_delay(QoSExponent{u}, t); },
      py::arg("u_star"), py::arg("traffic"));

  m.def(
      "energy_efficiency",
      [](double Ptx, double u, const TrafficModel& t, const SystemParams& s) {
        return energy_efficiency(Ptx, QoSExponent{u}, t, s);
      },
      py::arg("Ptx"), py::arg("u_star"), py::arg("traffic"), py::arg("params"));
  m.def(
      "power_lower_bound",
      [](double u, const TrafficModel& t, const SystemParams& s) {
        return power_lower_bound(QoSExponent{u}, t, s);
      },
      py::arg("u_star"), py::arg("traffic"), py::arg("params"));
  m.def(
      "energy_efficiency_upper",
      [](double u, const TrafficModel& t, const SystemParams& s) {
        return energy_efficiency_upper(QoSExponent{u}, t, s);
      },
      py::arg("u_star"), py::arg("traffic"), py::arg("params"));
  m.def("check_stability", &check_stability, py::arg("Ptx"), py::arg("traffic"),
        py::arg("params"));
  m.def("stability_threshold_power", &stability_threshold_power, py::arg("traffic"),
        py::arg("params"));
  m.def("solve_min_power", &solve_min_power, py::arg("traffic"), py::arg("qos"),
        py::arg("params"), py::arg("tol") = 1e-6);
  m.def("solve_min_power_method1", &solve_min_power_method1, py::arg("traffic"),
        py::arg("qos"), py::arg("params"), py::arg("tol") = 1e-6);

  m.def("run_simulation", &run_simulation, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("empirical_efficiency", &empirical_efficiency, py::arg("stats"),
        py::arg("params"), py::arg("Ptx"));

#ifdef EEQOS_VERSION
  m.attr("__version__") = EEQOS_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
