#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace attnmoea {

/// Single logical random stream. All stochastic decisions in a run draw from
/// one instance in a fixed program order, so results depend only on the seed.
///
/// Sampling is done by hand on top of mt19937_64 because the standard
/// distributions are implementation-defined and would break bit-exact replay
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n) {
    // Lemire-style rejection keeps the draw unbiased.
    const std::uint64_t bound = n;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return static_cast<std::size_t>(r % bound);
    }
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

  /// `count` distinct indices drawn from [0, n), in draw order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t count);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace attnmoea
