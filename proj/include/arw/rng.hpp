#pragma once

#include <cstdint>
#include <random>

namespace arw {

/// Seedable generator with a portable output sequence.
///
/// Backed by std::mt19937_64, whose raw output is fixed by the standard.
/// Distributions are derived here rather than through <random>'s
/// distribution classes, whose algorithms are implementation-defined.
///
/// Stream splitting: stream `i` of master seed `s` is seeded with
/// splitmix64(s ^ splitmix64(i + 1)), so independent consumers (Monte-Carlo
/// chunks, k-means restarts) never share a sequence and results do not depend
/// on which worker ran which stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(split(seed, stream)) {}

  static constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  static constexpr std::uint64_t split(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(seed ^ splitmix64(stream + 1));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); Lemire's rejection method, bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    auto product = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace arw
