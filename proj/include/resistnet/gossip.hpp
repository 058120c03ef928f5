#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "resistnet/graph.hpp"
#include "resistnet/sampling.hpp"
#include "resistnet/spectral.hpp"
#include "resistnet/trace.hpp"

namespace resistnet {

enum class GossipScheme { classic, effective_resistance };

/// Wake-up and neighbor-pick distributions for randomized gossip.
/// Neighbor probabilities are aligned with Graph::neighbors(i).
class GossipConfig {
 public:
  /// p_i = 1/n, p_ij = 1/d_i.
  static GossipConfig classic(const Graph& g);

  /// p_i = sum_j R_ij / (2 sum_E R), p_ij = R_ij / sum_j R_ij, over incident edges.
  static GossipConfig effective_resistance(const Graph& g, const ResistanceTable& r);

  GossipScheme scheme() const noexcept { return scheme_; }
  double wake_probability(std::size_t i) const { return wake_.probabilities()[i]; }
  std::span<const double> wake_probabilities() const noexcept { return wake_.probabilities(); }
  std::span<const double> neighbor_probabilities(std::size_t i) const {
    return pick_[i].probabilities();
  }

  /// Draws (i, position of j in neighbors(i)).
  std::pair<std::size_t, std::size_t> draw(Rng& rng) const;

 private:
  GossipScheme scheme_ = GossipScheme::classic;
  DiscreteSampler wake_;
  std::vector<DiscreteSampler> pick_;
};

/// Replaces y_i and y_j by their mean. Throws Errc::not_an_edge for non-edges.
void gossip_step(std::span<double> y, const Graph& g, std::size_t i, std::size_t j);

/// p_i p_ij + p_j p_ji for the edge {i, j}.
double edge_activation_probability(const GossipConfig& config, const Graph& g, std::size_t i,
                                   std::size_t j);

struct GossipOptions {
  std::size_t events = 100'000;
  std::size_t stride = 1;
  double floor = 1e-13;  // stop once the relative error drops below; 0 disables
};

struct GossipRunResult {
  PathTrace trace;
  std::vector<double> values;
};

/// Simulates one sample path from y0, recording ||y^k - avg 1||_2 / |avg| and,
/// when `lobes` is given, the two lobe means.
GossipRunResult run_gossip(const Graph& g, std::span<const double> y0, const GossipConfig& config,
                           std::uint64_t seed, const GossipOptions& options,
                           const std::optional<Lobes>& lobes = std::nullopt);

/// Left lobe i.i.d. Normal(100, 1), right lobe Normal(0, 1).
std::vector<double> barbell_normal_init(const Lobes& lobes, Rng& rng);

}  // namespace resistnet
