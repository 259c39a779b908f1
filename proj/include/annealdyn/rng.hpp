#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace annealdyn {

// Documented draw sequence: std::mt19937_64 (fully specified by the C++ standard),
// seeded per stream through SplitMix64; uniforms use the top 53 bits.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (stream + 1));
    engine_.seed(splitmix64(s));
  }

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Marsaglia polar method; returns two independent standard normals.
  std::pair<double, double> normal_pair() {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0, v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        return {u * f, v * f};
      }
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

namespace rng_stream {
inline constexpr std::uint64_t bath_couplings = 1;
inline constexpr std::uint64_t bath_state = 2;
inline constexpr std::uint64_t multinomial = 3;
inline constexpr std::uint64_t bootstrap = 4;
}  // namespace rng_stream

}  // namespace annealdyn
