#include "planarmap/random.hpp"

namespace planarmap {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_hi_(mix64(seed + kGolden) ^ mix64(stream * kGolden + 0x632BE59BD9B4E019ull)),
      key_lo_(mix64(mix64(seed ^ 0xD1B54A32D192ED03ull) + stream)) {}

CounterRng::result_type CounterRng::operator()() noexcept {
  const std::uint64_t i = counter_++;
  return mix64(key_hi_ ^ mix64(i * kGolden + key_lo_));
}

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  // Lemire's multiply-and-reject.
  unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double CounterRng::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

}  // namespace planarmap
