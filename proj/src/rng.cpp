#include "evmix/rng.hpp"

#include <cmath>

namespace evmix {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double RandomStream::uniform() {
  const std::uint64_t word = engine_();
  return (static_cast<double>(word >> 11) + 0.5) * 0x1p-53;
}

double RandomStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double RandomStream::gamma(double shape) {
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint32_t cell,
                          std::uint32_t rep) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(cell) << 32) | static_cast<std::uint64_t>(rep);
  // splitmix64 is a bijection, so for a fixed master this is injective in key.
  return splitmix64(master ^ splitmix64(key));
}

}  // namespace evmix
