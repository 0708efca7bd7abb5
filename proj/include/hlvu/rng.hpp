#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace hlvu {

/// SplitMix64 (Steele, Lea & Flood 2014). Query generation draws every random
/// decision from this stream so that output depends only on the seed.
///
/// Test vectors for seed 0: 0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4,
/// 0x06c45d188009454f.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by rejection: draws below
  /// (2^64 - bound) mod bound are discarded, then the draw is reduced mod bound.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  bool coin() { return (next() >> 63) != 0; }

  /// Fisher-Yates from the back: for i = n-1 .. 1 swap items[i] with
  /// items[below(i + 1)].
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace hlvu
