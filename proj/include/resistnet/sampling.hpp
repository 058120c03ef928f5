#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace resistnet {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
/// Spelled out so sample paths do not depend on the standard library's
/// distribution implementation.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Inverse-CDF sampler over a fixed discrete distribution.
class DiscreteSampler {
 public:
  DiscreteSampler() = default;

  /// `weights` need not be normalized but must be positive and finite.
  explicit DiscreteSampler(std::span<const double> weights);

  std::size_t sample(Rng& rng) const;

  std::size_t size() const noexcept { return probabilities_.size(); }
  std::span<const double> probabilities() const noexcept { return probabilities_; }

 private:
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

}  // namespace resistnet
