#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ttrlguard {

/// Deterministic splitmix64 stream. Output is identical on every platform,
/// unlike std::uniform_*_distribution, so logs stay byte-stable.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  int next_int(int bound) {
    // Rejection sampling keeps the draw unbiased without __int128 tricks.
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return static_cast<int>(r % b);
  }

  bool bernoulli(double p) { return next_double() < p; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Index drawn from an unnormalized weight vector via CDF walk.
  int categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

  /// Fisher-Yates shuffle using this stream.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      int j = next_int(i + 1);
      std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
    }
  }

private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Independent substream for (master, a, b, c). Streams for distinct ids are
/// decorrelated, so per-problem work can run in any order.
inline Rng derive_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0) {
  std::uint64_t s = detail::mix64(master + 0x9E3779B97F4A7C15ULL);
  s = detail::mix64(s ^ detail::mix64(a + 0xD1B54A32D192ED03ULL));
  s = detail::mix64(s ^ detail::mix64(b + 0x8CB92BA72F3D8DD7ULL));
  s = detail::mix64(s ^ detail::mix64(c + 0xEB44ACCAB455D165ULL));
  return Rng(s);
}

}  // namespace ttrlguard
