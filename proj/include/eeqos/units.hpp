#pragma once

#include <cmath>

#include "eeqos/errors.hpp"

namespace eeqos {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) {
  if (!(x > 0.0)) throw ConfigError("linear_to_db: value must be positive");
  return 10.0 * std::log10(x);
}

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double w) {
  if (!(w > 0.0)) throw ConfigError("watts_to_dbm: value must be positive");
  return 10.0 * std::log10(w) + 30.0;
}

/// Macro-cell path loss at 2 GHz carrier, distance in km, result in dB.
inline double path_loss_db(double d_km) {
  if (!(d_km > 0.0)) throw ConfigError("path_loss_db: d_km must be positive");
  return 128.1 + 37.6 * std::log10(d_km);
}

}  // namespace eeqos
