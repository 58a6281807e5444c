#pragma once

#include <cstdint>
#include <vector>

#include "schelling/rational.hpp"

namespace schelling {

// Deterministic generator with a fixed algorithm (splitmix64), so seeded
// runs reproduce byte-identical artifacts on any platform. std:: engines
// are avoided on purpose: their distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) via rejection; n must be positive.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Exact Bernoulli(p) for rational p in [0, 1].
  bool chance(const Rational& p) {
    if (p.numerator() <= 0) return false;
    if (p >= Rational(1)) return true;
    std::uint64_t draw = below(static_cast<std::uint64_t>(p.denominator()));
    return draw < static_cast<std::uint64_t>(p.numerator());
  }

  // First k slots of a Fisher-Yates shuffle over 0..n-1.
  std::vector<int> sample_distinct(int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
      int j = i + below_int(n - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::uint64_t state_;
};

}  // namespace schelling
