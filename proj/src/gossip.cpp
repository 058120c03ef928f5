#include "resistnet/gossip.hpp"

#include <cmath>
#include <random>
#include <string>

#include "resistnet/error.hpp"

namespace resistnet {

GossipConfig GossipConfig::classic(const Graph& g) {
  GossipConfig c;
  c.scheme_ = GossipScheme::classic;
  c.wake_ = DiscreteSampler(std::vector<double>(g.node_count(), 1.0));
  c.pick_.reserve(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    c.pick_.emplace_back(std::vector<double>(g.degree(i), 1.0));
  }
  return c;
}

GossipConfig GossipConfig::effective_resistance(const Graph& g, const ResistanceTable& r) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  if (r.pairs.rows() != n || r.pairs.cols() != n || r.incident_sum.size() != g.node_count()) {
    throw Error(Errc::mismatch, "resistance table does not match the graph");
  }
  GossipConfig c;
  c.scheme_ = GossipScheme::effective_resistance;
  std::vector<double> wake(g.node_count());
  c.pick_.reserve(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    std::vector<double> pick;
    pick.reserve(g.degree(i));
    for (const auto& inc : g.neighbors(i)) {
      pick.push_back(r(i, inc.neighbor));
    }
    // Normalization by sum_j R_ij and 2 sum_E R happens in the sampler.
    wake[i] = r.incident_sum[i];
    c.pick_.emplace_back(pick);
  }
  c.wake_ = DiscreteSampler(wake);
  return c;
}

std::pair<std::size_t, std::size_t> GossipConfig::draw(Rng& rng) const {
  const std::size_t i = wake_.sample(rng);
  return {i, pick_[i].sample(rng)};
}

void gossip_step(std::span<double> y, const Graph& g, std::size_t i, std::size_t j) {
  if (!g.has_edge(i, j)) {
    throw Error(Errc::not_an_edge,
                "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") is not an edge");
  }
  const double mean = (y[i] + y[j]) / 2.0;
  y[i] = mean;
  y[j] = mean;
}

double edge_activation_probability(const GossipConfig& config, const Graph& g, std::size_t i,
                                   std::size_t j) {
  if (!g.has_edge(i, j)) {
    throw Error(Errc::not_an_edge,
                "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") is not an edge");
  }
  auto directed = [&](std::size_t from, std::size_t to) {
    const auto adj = g.neighbors(from);
    const auto pick = config.neighbor_probabilities(from);
    for (std::size_t k = 0; k < adj.size(); ++k) {
      if (adj[k].neighbor == to) return config.wake_probability(from) * pick[k];
    }
    return 0.0;
  };
  return directed(i, j) + directed(j, i);
}

namespace {

double lobe_mean(std::span<const double> y, const std::vector<std::size_t>& lobe) {
  double s = 0.0;
  for (std::size_t i : lobe) s += y[i];
  return s / static_cast<double>(lobe.size());
}

}  // namespace

GossipRunResult run_gossip(const Graph& g, std::span<const double> y0, const GossipConfig& config,
                           std::uint64_t seed, const GossipOptions& options,
                           const std::optional<Lobes>& lobes) {
  const std::size_t n = g.node_count();
  if (y0.size() != n) throw Error(Errc::mismatch, "initial values length differs from node count");
  if (config.wake_probabilities().size() != n) throw Error(Errc::mismatch, "gossip config does not match the graph");
  if (lobes) {
    for (const auto* lobe : {&lobes->left, &lobes->right}) {
      if (lobe->empty()) throw Error(Errc::invalid_argument, "lobe node sets must be nonempty");
      for (std::size_t i : *lobe) {
        if (i >= n) throw Error(Errc::out_of_range, "lobe node outside the graph");
      }
    }
  }
  const std::size_t stride = std::max<std::size_t>(options.stride, 1);

  GossipRunResult result;
  result.values.assign(y0.begin(), y0.end());
  std::vector<double>& y = result.values;
  double total = 0.0;
  for (double v : y) total += v;
  const double target = total / static_cast<double>(n);
  PathTrace& trace = result.trace;
  trace.absolute_metric = target == 0.0;

  auto record = [&](std::size_t k) {
    double sq = 0.0;
    for (double v : y) sq += (v - target) * (v - target);
    const double err = trace.absolute_metric ? std::sqrt(sq) : std::sqrt(sq) / std::abs(target);
    trace.events.push_back(k);
    trace.rel_error.push_back(err);
    if (lobes) {
      trace.lobe_left.push_back(lobe_mean(y, lobes->left));
      trace.lobe_right.push_back(lobe_mean(y, lobes->right));
    }
    if (options.floor > 0.0 && err < options.floor) trace.floor_event = k;
    return trace.floor_event.has_value();
  };

  Rng rng(seed);
  std::size_t k = 0;
  if (!record(0)) {
    for (k = 1; k <= options.events; ++k) {
      const auto [i, pos] = config.draw(rng);
      const std::size_t j = g.neighbors(i)[pos].neighbor;
      const double mean = (y[i] + y[j]) / 2.0;
      y[i] = mean;
      y[j] = mean;
      if ((k % stride == 0 || k == options.events) && record(k)) break;
    }
    if (k > options.events) k = options.events;
  }
  trace.events_run = k;
  return result;
}

std::vector<double> barbell_normal_init(const Lobes& lobes, Rng& rng) {
  std::vector<double> y(lobes.left.size() + lobes.right.size(), 0.0);
  std::normal_distribution<double> high(100.0, 1.0);
  std::normal_distribution<double> low(0.0, 1.0);
  for (std::size_t i : lobes.right) y.at(i) = low(rng);
  for (std::size_t i : lobes.left) y.at(i) = high(rng);
  return y;
}

}  // namespace resistnet
