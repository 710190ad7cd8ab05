#pragma once

#include <cstdint>
#include <cmath>

namespace lig {

// Deterministic 64-bit generator (splitmix64). We roll our own uniform and
// gaussian draws so that generator output is identical across standard
// libraries and platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derives an independent stream, e.g. one per node index.
  static Rng stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
    r.next();
    r.state_ += 0xbf58476d1ce4e5b9ULL * (index + 1);
    r.next();
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return u01() < p; }

  // Uniform integer in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    // rejection sampling keeps the draw unbiased
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Standard normal via Box-Muller.
  double gaussian() {
    double u1 = u01();
    while (u1 <= 0.0) u1 = u01();
    double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace lig
