#pragma once

#include <cstdint>
#include <limits>

namespace planarmap {

/**
 * Counter-based generator: draw i of stream s under seed k is a fixed hash
 * of (k, s, i). Output is bit-identical across platforms and independent of
 * how replicates are scheduled across threads.
 */
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_hi_;
  std::uint64_t key_lo_;
  std::uint64_t counter_ = 0;
};

}  // namespace planarmap
