#include "eeqos/params.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "eeqos/units.hpp"

namespace eeqos {

namespace {

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + ": " + what);
}

}  // namespace

SystemParams make_system_params(double Ts, double Bc, double N0_w_hz, double m,
                                double gamma_bar_lin, double d_km, double Pc,
                                double Pidle, double Pmax) {
  require(std::isfinite(Ts) && Ts > 0, "Ts_s", "must be positive");
  require(std::isfinite(Bc) && Bc > 0, "Bc_hz", "must be positive");
  require(std::isfinite(N0_w_hz) && N0_w_hz > 0, "N0_dbm_hz", "must convert to a positive W/Hz");
  require(std::isfinite(m) && m >= 0.5, "m", "must be >= 0.5");
  require(std::isfinite(gamma_bar_lin) && gamma_bar_lin > 0, "gamma_bar_db", "must be positive in linear units");
  require(std::isfinite(d_km) && d_km > 0, "d_km", "must be positive");
  const double lp = db_to_linear(path_loss_db(d_km));
  require(lp > 1.0, "d_km", "path loss must exceed 0 dB");
  require(std::isfinite(Pc) && Pc >= 0, "Pc_w", "must be non-negative");
  require(std::isfinite(Pidle) && Pidle >= 0, "Pidle_w", "must be non-negative");
  require(std::isfinite(Pmax) && Pmax > 0, "Pmax_w", "must be positive");
  require(Pidle < Pmax, "Pidle_w", "must be below Pmax_w");
  return SystemParams{Ts, Bc, N0_w_hz, m, gamma_bar_lin, d_km, lp, Pc, Pidle, Pmax};
}

TrafficModel make_traffic(double p, double Lbar, double Ts) {
  require(std::isfinite(p) && p > 0 && p <= 1, "p", "must be in (0, 1]");
  require(std::isfinite(Lbar) && Lbar > 0, "Lbar_bits", "must be positive");
  require(std::isfinite(Ts) && Ts > 0, "Ts_s", "must be positive");
  return TrafficModel{p, Lbar, Ts, Lbar * p / Ts};
}

QoSTarget make_qos(double Dmax, double eps, double Ts) {
  require(std::isfinite(Dmax) && Dmax > 0, "Dmax_s", "must be positive");
  require(std::isfinite(eps) && eps > 0 && eps < 1, "eps",
          "must be in (0, 1); eps = 1 would disable the delay constraint "
          "entirely (power would be set by stability alone)");
  require(std::isfinite(Ts) && Ts > 0, "Ts_s", "must be positive");
  const double beta = std::pow(eps, -Ts / (Dmax + Ts));
  return QoSTarget{Dmax, eps, beta};
}

namespace {

const std::vector<std::string> kKeys = {
    "Ts_s", "Bc_hz", "N0_dbm_hz", "m",         "gamma_bar_db", "d_km", "Pc_w",
    "Pidle_w", "Pmax_w", "p",     "Lbar_bits", "Dmax_s",       "eps"};

bool known_key(const std::string& k) {
  for (const auto& key : kKeys)
    if (key == k) return true;
  return false;
}

double parse_number(const std::string& key, std::string_view text) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ConfigError(key + ": unparsable number '" + std::string(text) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void insert_pair(std::map<std::string, double>& kv, std::string_view entry,
                 const char* origin) {
  const auto eq = entry.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError(std::string(origin) + " entry '" + std::string(entry) +
                      "' is not of the form key=value");
  const std::string key{trim(entry.substr(0, eq))};
  const std::string_view val = trim(entry.substr(eq + 1));
  if (!known_key(key)) throw ConfigError(key + ": unknown configuration key");
  kv[key] = parse_number(key, val);
}

}  // namespace

const std::vector<std::string>& config_key_names() { return kKeys; }

std::map<std::string, double> parse_config_keys(
    std::string_view text, const std::vector<std::string>& overrides) {
  std::map<std::string, double> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v{line};
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    insert_pair(kv, v, "config");
  }
  for (const auto& o : overrides) insert_pair(kv, o, "override");
  if (!kv.count("Pmax_w")) kv["Pmax_w"] = 10.0;  // documented default
  for (const auto& key : kKeys)
    if (!kv.count(key)) throw ConfigError(key + ": missing required key");
  return kv;
}

Config parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  const auto kv = parse_config_keys(text, overrides);
  const double Ts = kv.at("Ts_s");
  SystemParams sys = make_system_params(
      Ts, kv.at("Bc_hz"), dbm_to_watts(kv.at("N0_dbm_hz")), kv.at("m"),
      db_to_linear(kv.at("gamma_bar_db")), kv.at("d_km"), kv.at("Pc_w"),
      kv.at("Pidle_w"), kv.at("Pmax_w"));
  TrafficModel traffic = make_traffic(kv.at("p"), kv.at("Lbar_bits"), Ts);
  QoSTarget qos = make_qos(kv.at("Dmax_s"), kv.at("eps"), Ts);
  return Config{sys, traffic, qos};
}

}  // namespace eeqos
