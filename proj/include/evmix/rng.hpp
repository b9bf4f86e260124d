#pragma once

#include <cstdint>
#include <random>

namespace evmix {

//! Deterministic variate stream.
//!
//! The core generator is MT19937-64 as specified by `std::mt19937_64`, whose
//! output sequence is pinned by the C++ standard, and all transforms to
//! uniform/normal/gamma variates are implemented here rather than through
//! `std::*_distribution` (whose output is implementation-defined). Identical
//! seeds therefore give bit-identical draws on every conforming platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  //! Uniform draw strictly inside (0, 1): ((word >> 11) + 0.5) * 2^-53.
  double uniform();

  //! Standard normal draw, Box-Muller form; consumes two uniforms.
  double normal();

  //! Gamma(shape, scale 1) draw for any shape > 0 (Marsaglia-Tsang, with the
  //! shape < 1 boost via U^(1/shape)).
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
};

//! SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

//! Seed for replication `rep` of experiment cell `cell`, derived from the
//! master seed. Injective in (cell, rep).
std::uint64_t derive_seed(std::uint64_t master, std::uint32_t cell,
                          std::uint32_t rep);

}  // namespace evmix
