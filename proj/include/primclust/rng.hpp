#ifndef PRIMCLUST_RNG_HPP
#define PRIMCLUST_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace primclust {

// Seeded generator used for every random choice in the toolkit.  Uniform and
// normal variates are derived from the raw 64-bit stream (not from
// std::*_distribution) so results are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_mix_(seed) {}

  static const char* generator_id() { return "mt19937_64"; }

  std::uint64_t bits() { return engine_(); }

  // uniform in [0,1)
  double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // uniform integer in [0, n)
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  double normal() {
    // Box-Muller, one value per call; spare cached.
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u <= 0.0) u = uniform01();
    double v = uniform01();
    double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
  }

  // deterministic per-trial substream, independent of draw order
  Rng substream(std::uint64_t stream) const {
    std::uint64_t x = seed_mix_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27; x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return Rng(x);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_mix_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace primclust

#endif
