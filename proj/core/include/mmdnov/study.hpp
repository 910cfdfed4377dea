#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmdnov/matrix.hpp"
#include "mmdnov/perm_test.hpp"

namespace mmdnov {

// ---------------------------------------------------------------------------
// Protocol defaults
// ---------------------------------------------------------------------------

namespace protocol {

inline constexpr std::size_t kSampleCap = 400;
inline constexpr std::size_t kTrials = 100;
inline constexpr double kAlpha = 0.01;
inline constexpr std::size_t kPermutations = 1000;
inline constexpr std::size_t kArtPermutations = 2500;
inline constexpr std::array<std::size_t, 10> kSampleSizes = {4, 5, 6, 7, 8, 9, 10, 12, 16, 24};

}  // namespace protocol

struct LabelPair {
  std::string a;
  std::string b;
  friend bool operator==(const LabelPair&, const LabelPair&) = default;
};

/// Named pair lists: "mnist-text" (five representative digit pairs) and
/// "mnist-code" (nine digit pairs, a wider sweep). Returns nullopt
/// for any other name.
std::optional<std::vector<LabelPair>> pair_preset(std::string_view name);

// ---------------------------------------------------------------------------
// Pairwise matrix with negative controls
// ---------------------------------------------------------------------------

using Cell = std::optional<double>;
using CellMatrix = std::vector<std::vector<Cell>>;

struct MmdMatrixResult {
  std::vector<std::string> labels;
  CellMatrix mmd;
  CellMatrix p_values;
  std::size_t sample_cap = 0;
  TestConfig config_echo;
};

/// L x L matrix of permutation tests. Off-diagonal cells compare
/// min(cap, rows) rows drawn without replacement from each label and are
/// stored symmetrically. Diagonal cells split one draw of 2k distinct rows,
/// k = min(cap, rows / 2), into disjoint halves (negative control) and need
/// at least 4 rows. Cells whose preconditions fail stay absent.
///
/// Cell (i, j) draws with seed derive_seed(cfg.seed, {i, j, 0}) and tests
/// with derive_seed(cfg.seed, {i, j, 1}).
MmdMatrixResult mmd_matrix(const LabeledCorpus& corpus, const TestConfig& cfg, std::size_t sample_cap);

// ---------------------------------------------------------------------------
// Rejection-rate curves
// ---------------------------------------------------------------------------

struct PowerCurveResult {
  std::vector<LabelPair> pairs;
  std::vector<std::size_t> sample_sizes;
  /// rates[pair][size]; absent when no trial could run.
  std::vector<std::vector<Cell>> rates;
  /// Trials that completed, per [pair][size].
  std::vector<std::vector<std::size_t>> valid_trials;
  std::size_t trials = 0;
  std::size_t rej_cap = 0;
  TestConfig config_echo;
};

/// For every (pair, n): `trials` independent tests on min(n, rows, rej_cap)
/// rows drawn without replacement from each label; rate = rejections /
/// completed trials. Trial t of pair p at size n draws with
/// derive_seed(cfg.seed, {p, n, t, 0}) and tests with
/// derive_seed(cfg.seed, {p, n, t, 1}), so trials are independent of
/// execution order. Trials fan out over cfg.workers threads; each test
/// runs single-threaded.
PowerCurveResult power_curves(const LabeledCorpus& corpus, const std::vector<LabelPair>& pairs,
                              const std::vector<std::size_t>& sample_sizes, std::size_t trials,
                              const TestConfig& cfg, std::size_t rej_cap);

// ---------------------------------------------------------------------------
// Synthetic sources
// ---------------------------------------------------------------------------

enum class SynthFamily {
  kGaussian,  // mean + scale * N(0, I)
  kMoons,     // two interleaved half circles in dims 0-1, noise scale, shifted by mean
  kMixture,   // equal-weight mixture of isotropic gaussians, one per mean
};

SynthFamily parse_synth_family(std::string_view name);
std::string_view to_string(SynthFamily family) noexcept;

struct SynthSpec {
  SynthFamily family = SynthFamily::kGaussian;
  std::size_t dim = 2;
  /// One mean for gaussian and moons; one per component for mixture.
  std::vector<std::vector<double>> means;
  double scale = 1.0;
  std::uint64_t seed = 0;

  /// Throws ConfigError for scale <= 0, a mean of the wrong length, the
  /// wrong number of means, or moons with dim < 2.
  void validate() const;

  static SynthSpec gaussian(std::vector<double> mean, double scale, std::uint64_t seed);
};

/// n i.i.d. rows; deterministic in (spec, n). Normals come from the
/// Box-Muller transform of the pinned generator.
EmbeddingMatrix generate_synthetic(const SynthSpec& spec, std::size_t n);

}  // namespace mmdnov
