#pragma once

// Deterministic random source. std::mt19937_64 is seeded through splitmix64,
// and all distributions are implemented here by hand because the standard
// library distributions are implementation-defined -- byte-identical outputs
// across compilers are part of the contract.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace crawlrlr {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed and up to three
// stream indices (trial, crawler, replicate, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= a + 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(s);
  s ^= b + 0xd1b54a32d192ed03ULL;
  h ^= splitmix64(s);
  s ^= c + 0x8cb92ba72f3d8dd7ULL;
  h ^= splitmix64(s);
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(below(static_cast<std::uint64_t>(n)));
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Number of failures before the first success, success probability p.
  // Mean (1-p)/p.
  std::uint64_t geometric(double p) {
    const double u = next_double();
    if (p >= 1.0) return 0;
    const double g = std::floor(std::log1p(-u) / std::log1p(-p));
    return g < 0 ? 0 : static_cast<std::uint64_t>(g);
  }

  // Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Draw from a categorical distribution given cumulative weights summing
  // to 1 (last entry may fall short by rounding; clamped to the last class).
  int categorical(const std::vector<double>& cumulative) {
    const double u = next_double();
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
      if (u < cumulative[i]) return static_cast<int>(i);
    }
    return static_cast<int>(cumulative.size()) - 1;
  }

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

  // First k elements of a Fisher-Yates shuffle: a uniform sample of k items
  // without replacement. items is permuted in place.
  template <typename T>
  void partial_shuffle(std::vector<T>& items, std::size_t k) {
    const std::size_t n = items.size();
    for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
      std::swap(items[i], items[i + index(n - i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace crawlrlr
