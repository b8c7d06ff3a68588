#pragma once

#include <cmath>
#include <cstdint>

namespace eeqos {

/// splitmix64 (Steele et al.); used to expand seeds into generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman & Vigna). Streams are derived by perturbing the
/// seed with the stream index before state expansion, so replications get
/// independent, reproducible sequences.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t sm = seed ^ (0xA0761D6478BD642FULL * (stream + 1));
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/// Exponential with the given mean, by inversion. Never returns inf: the
/// uniform is taken in (0, 1].
inline double exponential_draw(Xoshiro256pp& rng, double mean) {
  return -mean * std::log1p(-rng.uniform01());
}

/// Standard normal via the Marsaglia polar method; the spare value is
/// discarded.
inline double normal_draw(Xoshiro256pp& rng) {
  for (;;) {
    double u = 2.0 * rng.uniform01() - 1.0;
    double v = 2.0 * rng.uniform01() - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

/// Gamma(shape, scale) via Marsaglia-Tsang squeeze; shape < 1 uses the
/// boost G(shape+1) * U^(1/shape).
inline double gamma_draw(Xoshiro256pp& rng, double shape, double scale) {
  if (shape < 1.0) {
    double u = rng.uniform01();
    while (u <= 0.0) u = rng.uniform01();
    return gamma_draw(rng, shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal_draw(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = rng.uniform01();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

}  // namespace eeqos
