#include <doctest.h>

#include <cmath>

#include "resistnet/error.hpp"
#include "resistnet/gossip.hpp"
#include "test_support.hpp"

using namespace resistnet;

TEST_CASE("gossip_step: pair average") {
  const Graph g = Graph::path(2);
  std::vector<double> y{0.0, 2.0};
  gossip_step(y, g, 0, 1);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 1.0);
  gossip_step(y, g, 1, 0);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 1.0);
}

TEST_CASE("gossip_step: non-edge rejected, other entries untouched") {
  const Graph g = Graph::path(3);
  std::vector<double> y{1.0, 2.0, 7.0};
  CHECK_THROWS_AS(gossip_step(y, g, 0, 2), Error);
  gossip_step(y, g, 1, 2);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 4.5);
  CHECK(y[2] == 4.5);
}

TEST_CASE("config: classic probabilities") {
  const Graph g = Graph::barbell(5);
  const GossipConfig c = GossipConfig::classic(g);
  double total = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    total += c.wake_probability(i);
    CHECK(c.wake_probability(i) == doctest::Approx(0.1));
    for (double p : c.neighbor_probabilities(i)) CHECK(p == doctest::Approx(1.0 / g.degree(i)));
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("config: effective-resistance probabilities") {
  const Graph g = testing::random_weighted_graph(12, 14, 3);
  const ResistanceTable r = effective_resistances(spectral(g), g);
  const GossipConfig c = GossipConfig::effective_resistance(g, r);
  double total = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    total += c.wake_probability(i);
    CHECK(c.wake_probability(i) == doctest::Approx(r.incident_sum[i] / (2.0 * r.edge_total)));
    const auto nb = g.neighbors(i);
    double pick_total = 0.0;
    for (std::size_t k = 0; k < nb.size(); ++k) {
      pick_total += c.neighbor_probabilities(i)[k];
      CHECK(c.neighbor_probabilities(i)[k] == doctest::Approx(r(i, nb[k].neighbor) / r.incident_sum[i]));
    }
    CHECK(pick_total == doctest::Approx(1.0));
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("edge activation: ER scheme gives R_ij / sum R") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = seed % 2 ? testing::random_weighted_graph(10, 8, seed) : Graph::barbell(4 + seed);
    const ResistanceTable r = effective_resistances(spectral(g), g);
    const GossipConfig c = GossipConfig::effective_resistance(g, r);
    double total = 0.0;
    for (const auto& e : g.edges()) {
      const double p = edge_activation_probability(c, g, e.u, e.v);
      CHECK(std::abs(p - r(e.u, e.v) / r.edge_total) <= 1e-14);
      total += p;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("edge activation: classic") {
  // regular graph: exactly 1/m
  const Graph k5 = Graph::complete(5);
  const GossipConfig c5 = GossipConfig::classic(k5);
  for (const auto& e : k5.edges()) CHECK(edge_activation_probability(c5, k5, e.u, e.v) == doctest::Approx(0.1));

  // non-regular: (1/n)(1/d_i + 1/d_j), not uniform
  const Graph b = Graph::barbell(5);
  const GossipConfig cb = GossipConfig::classic(b);
  double total = 0.0;
  for (const auto& e : b.edges()) {
    const double p = edge_activation_probability(cb, b, e.u, e.v);
    CHECK(p == doctest::Approx((1.0 / b.degree(e.u) + 1.0 / b.degree(e.v)) / 10.0));
    total += p;
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(edge_activation_probability(cb, b, 4, 5) < 1.0 / b.edge_count());

  CHECK_THROWS_AS(edge_activation_probability(cb, b, 0, 9), Error);
}

TEST_CASE("K3: ER and classic schemes coincide") {
  const Graph g = Graph::complete(3);
  const ResistanceTable r = effective_resistances(spectral(g), g);
  const GossipConfig er = GossipConfig::effective_resistance(g, r);
  const GossipConfig cl = GossipConfig::classic(g);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(er.wake_probability(i) == doctest::Approx(1.0 / 3));
    for (double p : er.neighbor_probabilities(i)) CHECK(p == doctest::Approx(0.5));
  }
  const std::vector<double> y0{1.0, 5.0, -2.0};
  GossipOptions opt;
  opt.events = 200;
  opt.floor = 0.0;
  const auto a = run_gossip(g, y0, er, 11, opt);
  const auto b = run_gossip(g, y0, cl, 11, opt);
  CHECK(a.values == b.values);
}

TEST_CASE("run: constant start stays at the floor") {
  const Graph g = Graph::barbell(4);
  const std::vector<double> y0(8, 3.25);
  GossipOptions opt;
  opt.events = 500;
  opt.floor = 0.0;
  const auto r = run_gossip(g, y0, GossipConfig::classic(g), 1, opt, barbell_lobes(4));
  for (double v : r.values) CHECK(v == 3.25);
  for (double e : r.trace.rel_error) CHECK(e == 0.0);
  for (double m : r.trace.lobe_left) CHECK(m == 3.25);
}

TEST_CASE("run: conservation and monotone dispersion") {
  const Graph g = Graph::barbell(10);
  const Lobes lobes = barbell_lobes(10);
  Rng init(4);
  const std::vector<double> y0 = barbell_normal_init(lobes, init);
  const GossipConfig c = GossipConfig::effective_resistance(g, effective_resistances(spectral(g), g));
  double sum0 = 0.0;
  double maxabs = 0.0;
  for (double v : y0) {
    sum0 += v;
    maxabs = std::max(maxabs, std::abs(v));
  }
  std::vector<double> y = y0;
  const double avg = sum0 / 20.0;
  Rng rng(5);
  auto dispersion = [&] {
    double s = 0.0;
    for (double v : y) s += (v - avg) * (v - avg);
    return std::sqrt(s);
  };
  double prev = dispersion();
  for (std::size_t k = 1; k <= 20'000; ++k) {
    const auto [i, pos] = c.draw(rng);
    gossip_step(y, g, i, g.neighbors(i)[pos].neighbor);
    const double d = dispersion();
    CHECK(d <= prev + 1e-12 * maxabs);
    prev = d;
    double s = 0.0;
    for (double v : y) s += v;
    if (k % 1000 == 0) CHECK(std::abs(s - sum0) <= double(k) * 2.2e-16 * maxabs * 20);
  }
}

TEST_CASE("run: zero average switches to the absolute metric") {
  const Graph g = Graph::path(3);
  const std::vector<double> y0{-1.0, 0.0, 1.0};
  GossipOptions opt;
  opt.events = 10;
  const auto r = run_gossip(g, y0, GossipConfig::classic(g), 1, opt);
  CHECK(r.trace.absolute_metric);
  CHECK(r.trace.rel_error.front() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("run: barbell lobes and determinism") {
  const Graph g = Graph::barbell(20);
  const Lobes lobes = barbell_lobes(20);
  Rng init(1);
  const std::vector<double> y0 = barbell_normal_init(lobes, init);
  double left = 0.0;
  double right = 0.0;
  for (std::size_t i : lobes.left) left += y0[i];
  for (std::size_t i : lobes.right) right += y0[i];
  CHECK(left / 20 == doctest::Approx(100.0).epsilon(0.01));
  CHECK(std::abs(right / 20) < 1.0);

  GossipOptions opt;
  opt.events = 5000;
  opt.stride = 10;
  const auto a = run_gossip(g, y0, GossipConfig::classic(g), 3, opt, lobes);
  const auto b = run_gossip(g, y0, GossipConfig::classic(g), 3, opt, lobes);
  CHECK(a.values == b.values);
  CHECK(a.trace.lobe_left == b.trace.lobe_left);
  CHECK(a.trace.lobe_left.front() == doctest::Approx(left / 20));
  CHECK(a.trace.events.size() == 501);
  CHECK_THROWS_AS(run_gossip(g, std::vector<double>(3, 0.0), GossipConfig::classic(g), 3, opt), Error);
}
