#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mmdnov {

/// Name of the pinned generator, echoed into every result document.
inline constexpr std::string_view kRngName = "xoshiro256**/1.0 seeded by splitmix64";

/// One step of SplitMix64 (Vigna's reference constants).
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Mixes a master seed with a path of integers (pair index, n, trial, ...)
/// into an independent child seed. Order of the path matters.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// xoshiro256** 1.0. Every derived quantity (bounded integers, uniforms,
/// normals, shuffles) is computed here with integer or IEEE arithmetic only,
/// so sequences do not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer in [0, bound). bound must be > 0. Lemire's
  /// multiply-shift with rejection, so the result is unbiased.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal via the Box-Muller transform; values are produced in
  /// pairs and the second one is cached.
  double normal() noexcept;

  /// Uniform random permutation in place (Fisher-Yates, high to low).
  void shuffle(std::span<std::size_t> items) noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
  std::optional<double> spare_normal_;
};

/// k distinct indices from [0, n), in draw order (partial Fisher-Yates).
/// Requires k <= n.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng);

}  // namespace mmdnov
