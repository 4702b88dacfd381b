#pragma once

#include <cstdint>
#include <random>

namespace sadisc {

/// SplitMix64 finalizer. Used to derive independent stream seeds from one run seed.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed for the `stream`-th consumer of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded generator with platform-independent real draws (53-bit mantissas),
/// so results are reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; no cached second value so streams stay simple.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace sadisc
