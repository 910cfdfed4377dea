#include <cmath>
#include <numbers>

#include "mmdnov/error.hpp"
#include "mmdnov/rng.hpp"
#include "mmdnov/study.hpp"

namespace mmdnov {

SynthFamily parse_synth_family(std::string_view name) {
  if (name == "gaussian") return SynthFamily::kGaussian;
  if (name == "moons") return SynthFamily::kMoons;
  if (name == "mixture") return SynthFamily::kMixture;
  throw ConfigError("unknown synthetic family '" + std::string(name) +
                    "' (expected gaussian, moons or mixture)");
}

std::string_view to_string(SynthFamily family) noexcept {
  switch (family) {
    case SynthFamily::kGaussian:
      return "gaussian";
    case SynthFamily::kMoons:
      return "moons";
    case SynthFamily::kMixture:
      return "mixture";
  }
  return "gaussian";
}

void SynthSpec::validate() const {
  if (dim < 1) throw ConfigError("synthetic dim must be >= 1");
  if (!std::isfinite(scale) || scale <= 0.0) throw ConfigError("synthetic scale must be finite and > 0");
  if (means.empty()) throw ConfigError("synthetic spec needs a mean");
  if (family != SynthFamily::kMixture && means.size() != 1) {
    throw ConfigError("only the mixture family takes more than one mean");
  }
  if (family == SynthFamily::kMoons && dim < 2) throw ConfigError("moons need dim >= 2");
  for (const auto& mean : means) {
    if (mean.size() != dim) {
      throw ConfigError("mean has " + std::to_string(mean.size()) + " entries, dim is " +
                        std::to_string(dim));
    }
    for (double v : mean) {
      if (!std::isfinite(v)) throw ConfigError("mean entries must be finite");
    }
  }
}

SynthSpec SynthSpec::gaussian(std::vector<double> mean, double scale, std::uint64_t seed) {
  SynthSpec spec;
  spec.family = SynthFamily::kGaussian;
  spec.dim = mean.size();
  spec.means = {std::move(mean)};
  spec.scale = scale;
  spec.seed = seed;
  return spec;
}

EmbeddingMatrix generate_synthetic(const SynthSpec& spec, std::size_t n) {
  spec.validate();
  EmbeddingMatrix out = EmbeddingMatrix::zeros(n, spec.dim);
  Rng rng(spec.seed);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = out.row(i);
    std::size_t component = 0;
    if (spec.family == SynthFamily::kMixture) {
      component = static_cast<std::size_t>(rng.below(spec.means.size()));
    } else if (spec.family == SynthFamily::kMoons) {
      const double t = std::numbers::pi * rng.uniform();
      if (rng.below(2) == 0) {
        row[0] = std::cos(t);
        row[1] = std::sin(t);
      } else {
        row[0] = 1.0 - std::cos(t);
        row[1] = 0.5 - std::sin(t);
      }
    }
    const auto& mean = spec.means[component];
    for (std::size_t j = 0; j < spec.dim; ++j) row[j] += mean[j] + spec.scale * rng.normal();
  }
  return out;
}

}  // namespace mmdnov
