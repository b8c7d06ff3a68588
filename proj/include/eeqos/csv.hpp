#pragma once

#include <cstdio>
#include <string>

namespace eeqos {

/// Shortest round-trippable decimal form; keeps CSV output byte-stable
/// across reruns.
inline std::string fmt_g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace eeqos
