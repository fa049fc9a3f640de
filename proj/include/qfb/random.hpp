#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace qfb {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: word i of the stream is a keyed hash of i, so a
/// stream is fully determined by its key and can be derived independently of
/// every other stream. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key = 0) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    return mix64(key_ ^ mix64(++counter_ * kGolden));
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double normal() { return normal_(*this); }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Stream for trajectory `index` of a run seeded with `master_seed`.
inline CounterRng derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  const std::uint64_t key = mix64(mix64(master_seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
  return CounterRng(key);
}

}  // namespace qfb
