#include "cartan/random.hpp"

namespace cartan {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t index) {
  std::uint64_t state = base;
  std::uint64_t h = splitmix64(state);
  state = h ^ (stream * 0xD1B54A32D192ED03ULL);
  h = splitmix64(state);
  state = h ^ (index * 0xABC98388FB8FAC03ULL);
  return splitmix64(state);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Complex Rng::complex_uniform() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

int Rng::index(int n) {
  return static_cast<int>(uniform() * n);
}

Bra2 random_bra2(Rng& rng) {
  Bra2 v;
  for (int i = 0; i < 2; ++i) v(i) = rng.complex_uniform();
  return v;
}

Bra4 random_bra4(Rng& rng) {
  Bra4 v;
  for (int i = 0; i < 4; ++i) v(i) = rng.complex_uniform();
  return v;
}

Mat2 random_mat2(Rng& rng) {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = rng.complex_uniform();
  return m;
}

Mat4 random_mat4(Rng& rng) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rng.complex_uniform();
  return m;
}

Bra2 random_unit_bra2(Rng& rng) {
  for (;;) {
    const Bra2 v = random_bra2(rng);
    const double n2 = v.squaredNorm();
    if (n2 > 1e-4 && n2 <= 1.0) return v / std::sqrt(n2);
  }
}

}  // namespace cartan
