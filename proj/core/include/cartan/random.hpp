#pragma once

#include <cstdint>
#include <random>

#include "cartan/numeric.hpp"

namespace cartan {

/// One step of the SplitMix64 sequence; used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for trial `index` of stream `stream` under a base seed. Stable across
/// platforms and independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t index);

// Deterministic generator built on std::mt19937_64. Real draws are formed
// from the top 53 bits of the raw output rather than through the standard
// distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Real and imaginary parts each uniform in [-1, 1).
  Complex complex_uniform();
  int index(int n);

 private:
  std::mt19937_64 engine_;
};

Bra2 random_bra2(Rng& rng);
Bra4 random_bra4(Rng& rng);
Mat2 random_mat2(Rng& rng);
Mat4 random_mat4(Rng& rng);
/// Uniform point on the unit sphere of C^2 (rejection from the 4-ball).
Bra2 random_unit_bra2(Rng& rng);

}  // namespace cartan
