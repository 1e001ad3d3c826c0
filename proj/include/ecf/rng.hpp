#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ecf {

/// Identifier of the random bit stream construction, recorded in sample
/// metadata so that archived outputs stay reproducible.
inline constexpr const char* kGeneratorId = "counter-v1";

namespace detail {

/// SplitMix64 finalizer: bijective 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Stateless counter-based random stream: every draw is a pure function of
/// (seed, stream, counter), so replicates can be generated on any number of
/// threads, in any order, with identical results. Streams index replicates;
/// counters index draws within a replicate.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(detail::mix64(seed) ^ detail::mix64(0xd1342543de82ef95ULL * (stream + 1))) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept {
    return detail::mix64(key_ + 0x9e3779b97f4a7c15ULL * counter);
  }

  /// Uniform draw in the open interval (0, 1); never returns 0 or 1, so
  /// logs and reciprocals stay finite.
  double uniform(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Unit Frechet draw by inverse transform, Z = -1/log(U).
  double frechet(std::uint64_t counter) const noexcept {
    return -1.0 / std::log(uniform(counter));
  }

  /// Standard normal via Box-Muller; consumes counters 2k and 2k+1.
  double normal(std::uint64_t counter) const noexcept {
    const double u1 = uniform(2 * counter);
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
};

}  // namespace ecf
