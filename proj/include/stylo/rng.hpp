// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace stylo {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic RNG used everywhere randomness is needed. mt19937_64 output
// is fully specified by the standard; the distribution helpers below are
// hand-rolled because std::uniform_*_distribution is implementation-defined
// and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

  uint64_t bits() { return eng_(); }

  // Uniform in [0, n). Multiply-shift bounding: bias is < 2^-64 and the
  // draw count per call is always exactly one, which keeps streams stable.
  uint64_t below(uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(bits()) * n;
    return static_cast<uint64_t>(m >> 64);
  }

  // Uniform integer in [lo, hi] inclusive.
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * unit(); }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  // Index draw proportional to non-negative weights.
  size_t weighted_pick(const std::vector<double>& weights) {
    double total = 0;
    for (double w : weights) total += w;
    double r = unit() * total;
    double acc = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (r < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
  }

  // Independent child stream derived from the original seed, not the current
  // engine state, so sub-streams can be handed out in any order.
  Rng split(uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream))); }

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace stylo
