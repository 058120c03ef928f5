#include "resistnet/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "resistnet/error.hpp"

namespace resistnet {

DiscreteSampler::DiscreteSampler(std::span<const double> weights) {
  if (weights.empty()) throw Error(Errc::invalid_argument, "sampler needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(Errc::invalid_argument, "sampling weights must be positive and finite");
    }
    total += w;
  }
  probabilities_.reserve(weights.size());
  cumulative_.reserve(weights.size());
  double running = 0.0;
  for (double w : weights) {
    probabilities_.push_back(w / total);
    running += w;
    cumulative_.push_back(running / total);
  }
  cumulative_.back() = 1.0;
}

std::size_t DiscreteSampler::sample(Rng& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

}  // namespace resistnet
