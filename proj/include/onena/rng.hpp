#ifndef ONENA_RNG_HPP
#define ONENA_RNG_HPP

#include <cstdint>
#include <limits>

namespace onena {

// 64-bit counter-based generator (SplitMix64 finalizer applied to
// key + counter). Same seed gives the same stream on every platform,
// and streams can be split by deriving new keys.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : key_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform in [0,1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in {0,...,bound-1}; bound >= 1. Rejection keeps it exact.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  bool next_bool() { return (next_u64() & 1u) != 0; }

  // Derived key for an independent stream (e.g. one per trial).
  static std::uint64_t split(std::uint64_t master, std::uint64_t index) { return master ^ mix(index); }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace onena

#endif
