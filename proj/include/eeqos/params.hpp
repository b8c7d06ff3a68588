#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "eeqos/errors.hpp"

namespace eeqos {

/// Physical-layer constants, all stored in linear SI units.
struct SystemParams {
  double Ts;         // slot duration, s
  double Bc;         // channel bandwidth, Hz
  double N0;         // noise spectral density, W/Hz
  double m;          // Nakagami fading shape
  double gamma_bar;  // average SNR, linear
  double d_km;       // transmitter-receiver distance, km
  double Lp;         // path loss, linear power ratio (derived from d_km)
  double Pc;         // circuit power, W
  double Pidle;      // idle-mode power, W
  double Pmax;       // upper bound for the transmission-power search, W
};

/// Bernoulli arrival process with exponentially distributed packet length.
struct TrafficModel {
  double p;     // per-slot arrival probability
  double Lbar;  // mean packet length, bits
  double Ts;    // slot duration, s
  double mu;    // mean arrival rate, bits/s (= Lbar * p / Ts)
};

/// Statistical delay constraint {Dmax, eps} and its derived exponent base.
struct QoSTarget {
  double Dmax;  // delay bound, s
  double eps;   // outage tolerance
  double beta;  // eps^(-Ts/(Dmax+Ts))
};

SystemParams make_system_params(double Ts, double Bc, double N0_w_hz, double m,
                                double gamma_bar_lin, double d_km, double Pc,
                                double Pidle, double Pmax);
TrafficModel make_traffic(double p, double Lbar, double Ts);
QoSTarget make_qos(double Dmax, double eps, double Ts);

struct Config {
  SystemParams sys;
  TrafficModel traffic;
  QoSTarget qos;
};

/// Parses a flat key=value document ('#' starts a comment). dB-valued keys
/// carry a _db/_dbm_hz suffix and are converted to linear units here.
/// `overrides` entries ("key=value") replace document values and must name
/// known keys.
Config parse_config(std::string_view text,
                    const std::vector<std::string>& overrides = {});

/// The raw key->value map after overrides, before unit conversion.
std::map<std::string, double> parse_config_keys(
    std::string_view text, const std::vector<std::string>& overrides = {});

const std::vector<std::string>& config_key_names();

}  // namespace eeqos
