#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace revroles {

// Deterministic random source built on std::mt19937_64. All variates are
// derived from raw engine draws with fixed arithmetic, never through
// std::*_distribution, so a given seed yields the same stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1].
  double uniform01_pos() { return 1.0 - uniform01(); }

  // Uniform integer in {0, ..., n-1}; n must be >= 1.
  std::uint32_t uniform_int(std::uint32_t n) {
    const std::uint64_t r = engine_();
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(r) * n) >> 64);
  }

  // Draws an index proportional to nonnegative weights.
  std::size_t categorical(std::span<const double> weights);

  // Standard normal (Marsaglia polar method; second variate discarded).
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape);

  // Symmetric Dirichlet(alpha) sample written into out.
  void dirichlet(double alpha, std::span<double> out);

  // Poisson by inversion of uniform products; suitable for small means.
  int poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

// Stable stream derivation (splitmix64 finalizer) so one user-facing seed
// can feed several independent consumers.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace revroles
