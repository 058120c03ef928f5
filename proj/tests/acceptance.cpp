// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and budgets are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "resistnet/drk.hpp"
#include "resistnet/experiment.hpp"
#include "resistnet/gossip.hpp"
#include "resistnet/kaczmarz.hpp"
#include "resistnet/spectral.hpp"
#include "test_support.hpp"

using namespace resistnet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double time_limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0 && secs >= time_limit_s) {
    o.pass = false;
    o.detail += " [runtime limit " + std::to_string(time_limit_s) + " s exceeded]";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Scenario fig1_scenario(std::size_t n, std::size_t m) {
  std::ostringstream path;
  path << RESISTNET_SCENARIO_DIR << "/fig1_n" << n << "_m" << m << ".scn";
  Scenario s = Scenario::load(path.str());
  s.out.clear();
  return s;
}

constexpr std::size_t kGrid[4][2] = {{10, 18}, {10, 36}, {20, 76}, {20, 152}};

double mean_hit(const AlgorithmReport& r, double threshold, std::size_t* reached) {
  double sum = 0.0;
  *reached = 0;
  for (const auto& p : r.paths) {
    if (const auto hit = p.first_below(threshold)) {
      sum += double(*hit);
      ++*reached;
    }
  }
  return *reached ? sum / double(*reached) : NAN;
}

}  // namespace

int main() {
  criterion(1, "oracle resistances on K_n and P2", 1.0, [] {
    Outcome o{true, ""};
    double worst = 0.0;
    for (std::size_t n : {3, 5, 10}) {
      const Graph g = Graph::complete(n);
      const ResistanceTable r = effective_resistances(spectral(g), g);
      const Eigen::MatrixXd ind = testing::pinv_by_regularized_inverse(LaplacianView(g).dense());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const auto I = Eigen::Index(i), J = Eigen::Index(j);
          const double independent = ind(I, I) + ind(J, J) - 2 * ind(I, J);
          worst = std::max({worst, std::abs(r(i, j) - 2.0 / double(n)), std::abs(independent - 2.0 / double(n))});
        }
      }
    }
    const Graph p2 = Graph::path(2);
    const double r12 = effective_resistances(spectral(p2), p2)(0, 1);
    o.pass = worst <= 1e-10 && std::abs(r12 - 1.0) <= 1e-12;
    o.detail = "max |R - 2/n| = " + num(worst) + " (tol 1e-10), |R12(P2) - 1| = " + num(std::abs(r12 - 1.0)) +
               " (tol 1e-12)";
    return o;
  });

  criterion(2, "Foster identity on 50 small-world graphs", 10.0, [] {
    double worst = 0.0;
    for (std::size_t k = 0; k < 50; ++k) {
      const Graph g = Graph::small_world(kGrid[k % 4][0], kGrid[k % 4][1], 500 + k);
      const ResistanceTable r = effective_resistances(spectral(g), g);
      double sum = 0.0;
      for (const auto& e : g.edges()) sum += e.weight * r(e.u, e.v);
      worst = std::max(worst, std::abs(sum - double(g.node_count() - 1)));
    }
    return Outcome{worst <= 1e-9, "max |sum w R - (n-1)| = " + num(worst) + " (tol 1e-9)"};
  });

  criterion(3, "RK mean squared error under rho^k bound", 30.0, [] {
    const Graph g = Graph::small_world(10, 18, 1);
    const LaplacianView lap(g);
    const RowSystem sys = laplacian_column_system(lap, 0);
    const double rho = rate_rho(g, norm_proportional_probabilities(lap));
    const Eigen::VectorXd xstar = spectral(g).pseudoinverse.col(0);
    const double x0 = xstar.squaredNorm();
    std::size_t horizon = 0;
    while (std::pow(rho, double(horizon)) * x0 >= 1e-12) ++horizon;
    std::vector<double> mean(horizon + 1, 0.0);
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
      KaczmarzIteration it(sys, RowOrder::randomized, std::uint64_t(s + 1));
      for (std::size_t k = 0; k <= horizon; ++k) {
        if (k > 0) it.step();
        double e = 0.0;
        for (std::size_t j = 0; j < 10; ++j) e += std::pow(it.x()[j] - xstar(Eigen::Index(j)), 2);
        mean[k] += e / seeds;
      }
    }
    double worst_ratio = 0.0;
    for (std::size_t k = 0; k <= horizon; ++k) worst_ratio = std::max(worst_ratio, mean[k] / (std::pow(rho, double(k)) * x0));
    return Outcome{worst_ratio <= 1.25, "rho = " + num(rho) + ", k up to " + std::to_string(horizon) +
                                            ", max mean/bound = " + num(worst_ratio) + " (limit 1.25)"};
  });

  criterion(4, "D-RK standard converges under rho^k bound", 120.0, [] {
    const Graph g = Graph::small_world(10, 18, 1);
    const SpectralData sd = spectral(g);
    const double rho = rate_rho_standard(g);
    const double pinv_sq = sd.pseudoinverse.squaredNorm();
    DrkOptions opt;
    opt.events = 100'000;
    const int seeds = 100;
    std::vector<PathTrace> paths;
    double worst_final = 0.0;
    for (int s = 0; s < seeds; ++s) {
      const DrkRunResult r = run_drk(g, sd.pseudoinverse, opt, std::uint64_t(s + 1));
      worst_final = std::max(worst_final, (r.estimate - sd.pseudoinverse).norm() / std::sqrt(pinv_sq));
      paths.push_back(r.trace);
    }
    // recorded k: every event up to the last event any path recorded
    std::size_t last = 0;
    for (const auto& p : paths) last = std::max(last, p.events.back());
    double worst_ratio = 0.0;
    std::size_t worst_k = 0;
    for (std::size_t k = 0; k <= last; ++k) {
      double mean = 0.0;
      for (const auto& p : paths) mean += std::pow(p.rel_error[std::min(k, p.rel_error.size() - 1)], 2) * pinv_sq;
      mean /= seeds;
      const double ratio = mean / (std::pow(rho, double(k)) * pinv_sq);
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst_k = k;
      }
    }
    return Outcome{worst_ratio <= 1.25 && worst_final <= 1e-6,
                   "rho = " + num(rho) + ", recorded k <= " + std::to_string(last) + ", max mean/bound = " +
                       num(worst_ratio) + " at k = " + std::to_string(worst_k) +
                       " (limit 1.25), worst final rel error = " + num(worst_final) + " (limit 1e-6)"};
  });

  criterion(5, "normalized D-RK beats standard on the four scenarios", 600.0, [] {
    Outcome o{true, ""};
    for (const auto& nm : kGrid) {
      Scenario s = fig1_scenario(nm[0], nm[1]);
      s.algorithms = {Algorithm::drk_standard, Algorithm::drk_normalized};
      s.seeds = 100;
      const Graph g = load_graph(s.graph).graph;
      const double rho = rate_rho_standard(g);
      const double rho_s = rate_rho_normalized(g);
      const ScenarioReport rep = run_scenario(s, false);
      std::size_t reached_std = 0, reached_norm = 0;
      const double std_events = mean_hit(rep.algorithms[0], 1e-4, &reached_std);
      const double norm_events = mean_hit(rep.algorithms[1], 1e-4, &reached_norm);
      const bool ok = rho_s < rho && reached_std == 100 && reached_norm == 100 && norm_events < std_events;
      o.pass = o.pass && ok;
      o.detail += "(" + std::to_string(nm[0]) + "," + std::to_string(nm[1]) + "): rho_S=" + num(rho_s) +
                  " rho=" + num(rho) + " events " + num(norm_events) + " < " + num(std_events) + (ok ? "; " : " FAILED; ");
    }
    return o;
  });

  criterion(6, "conjecture inequality on 100 small-world graphs", 0, [] {
    int holds = 0;
    for (std::size_t k = 0; k < 100; ++k) {
      holds += check_conjecture(Graph::small_world(kGrid[k % 4][0], kGrid[k % 4][1], 2000 + k)).holds;
    }
    return Outcome{holds >= 95, std::to_string(holds) + "/100 hold (need >= 95)"};
  });

  criterion(7, "cyclic Kaczmarz beats randomized mean on the four scenarios", 0, [] {
    Outcome o{true, ""};
    for (const auto& nm : kGrid) {
      Scenario s = fig1_scenario(nm[0], nm[1]);
      s.algorithms = {Algorithm::cyclic_kaczmarz, Algorithm::drk_standard, Algorithm::drk_normalized};
      const ScenarioReport rep = run_scenario(s, false);
      std::size_t rc = 0, rs = 0, rn = 0;
      const double cyc = mean_hit(rep.algorithms[0], 1e-6, &rc);
      const double std_events = mean_hit(rep.algorithms[1], 1e-6, &rs);
      const double norm_events = mean_hit(rep.algorithms[2], 1e-6, &rn);
      const bool ok = rc == 1 && rs == s.seeds && rn == s.seeds && cyc < std_events && cyc < norm_events;
      o.pass = o.pass && ok;
      o.detail += "(" + std::to_string(nm[0]) + "," + std::to_string(nm[1]) + "): cyclic " + num(cyc) +
                  " vs RK " + num(std_events) + " / normalized " + num(norm_events) + (ok ? "; " : " FAILED; ");
    }
    return o;
  });

  criterion(8, "normalized D-RK communication per event", 0, [] {
    const Graph g = Graph::small_world(10, 18, 1);
    DrkOptions opt;
    opt.variant = DrkVariant::normalized;
    opt.events = 10'000;
    opt.stride = 10'000;
    opt.floor = 0.0;
    const DrkRunResult r = run_drk(g, spectral(g).pseudoinverse, opt, 1);
    const double per_event = double(r.comm_count) / 10'000.0;
    const double expected = 4.0 * 18 * 9 / 10;
    const double rel = std::abs(per_event - expected) / expected;
    return Outcome{rel <= 0.02, "mean " + num(per_event) + " vs 4m(n-1)/n = " + num(expected) + ", rel dev " +
                                    num(rel) + " (limit 0.02)"};
  });

  criterion(9, "gossip conservation over 1e6 events on barbell(20)", 0, [] {
    const Graph g = Graph::barbell(20);
    const Lobes lobes = barbell_lobes(20);
    Rng init(7);
    const std::vector<double> y0 = barbell_normal_init(lobes, init);
    double sum0 = 0.0, maxabs = 0.0;
    for (double v : y0) {
      sum0 += v;
      maxabs = std::max(maxabs, std::abs(v));
    }
    GossipOptions opt;
    opt.events = 1'000'000;
    opt.stride = 1'000'000;
    opt.floor = 0.0;
    double worst = 0.0;
    for (const GossipConfig& c :
         {GossipConfig::classic(g), GossipConfig::effective_resistance(g, effective_resistances(spectral(g), g))}) {
      const GossipRunResult r = run_gossip(g, y0, c, 3, opt);
      double sum = 0.0;
      for (double v : r.values) sum += v;
      worst = std::max(worst, std::abs(sum - sum0));
    }
    return Outcome{worst <= 1e-7 * maxabs, "max |sum y^k - sum y^0| = " + num(worst) + " (limit " + num(1e-7 * maxabs) + ")"};
  });

  criterion(10, "effective-resistance gossip faster than classic on barbell(20)", 120.0, [] {
    Scenario s = Scenario::load(std::string(RESISTNET_SCENARIO_DIR) + "/fig2_barbell20.scn");
    s.out.clear();
    const ScenarioReport rep = run_scenario(s, false);
    std::size_t rc = 0, re = 0;
    const double classic = mean_hit(rep.algorithms[0], 1e-3, &rc);
    const double er = mean_hit(rep.algorithms[1], 1e-3, &re);
    const Comparison c = compare(rep.algorithms[0].trace, rep.algorithms[1].trace, metric(1e-3));
    const bool ok = rc == s.seeds && re == s.seeds && er < classic && c.speedup && *c.speedup > 1.0;
    return Outcome{ok, "mean events to 1e-3: classic " + num(classic) + " (" + std::to_string(rc) + " paths), ER " +
                           num(er) + " (" + std::to_string(re) + " paths); mean-trace speedup " +
                           (c.speedup ? num(*c.speedup) : std::string("not reached")) + "; final lobe means ER " +
                           num(rep.algorithms[1].trace.lobe_left_mean.back()) + " / " +
                           num(rep.algorithms[1].trace.lobe_right_mean.back())};
  });

  criterion(11, "finite-convergence floor logged per path", 0, [] {
    Scenario s = fig1_scenario(10, 18);
    s.algorithms = {Algorithm::drk_standard, Algorithm::drk_normalized};
    const ScenarioReport rep = run_scenario(s, false);
    std::string detail;
    bool logged = true;
    for (const auto& a : rep.algorithms) {
      std::ostringstream log;
      write_path_log(log, a);
      std::size_t rows = 0, at_floor = 0;
      std::size_t lo = SIZE_MAX, hi = 0;
      std::string line;
      std::istringstream in(log.str());
      std::getline(in, line);
      while (std::getline(in, line)) ++rows;
      for (const auto& p : a.paths) {
        if (!p.floor_event) continue;
        ++at_floor;
        lo = std::min(lo, *p.floor_event);
        hi = std::max(hi, *p.floor_event);
      }
      logged = logged && rows == a.paths.size();
      detail += to_string(a.algorithm) + ": " + std::to_string(at_floor) + "/" + std::to_string(a.paths.size()) +
                " paths hit 1e-13";
      if (at_floor) detail += " between events " + std::to_string(lo) + " and " + std::to_string(hi);
      detail += "; ";
    }
    return Outcome{logged, detail + "(logged, not asserted)"};
  });

  criterion(12, "scenario reruns are byte-identical", 0, [] {
    Scenario s = fig1_scenario(10, 36);
    s.seeds = 20;
    auto render = [](const ScenarioReport& rep) {
      std::ostringstream out;
      for (const auto& a : rep.algorithms) {
        write_trace_csv(out, a.trace);
        write_path_log(out, a);
      }
      return out.str();
    };
    s.threads = 1;
    const std::string a = render(run_scenario(s, false));
    s.threads = 4;
    const std::string b = render(run_scenario(s, false));
    Scenario g = Scenario::load(std::string(RESISTNET_SCENARIO_DIR) + "/fig2_barbell20.scn");
    g.out.clear();
    g.seeds = 5;
    g.events = 50'000;
    const std::string c = render(run_scenario(g, false));
    const std::string d = render(run_scenario(g, false));
    return Outcome{a == b && c == d, "D-RK " + std::to_string(a.size()) + " bytes, gossip " + std::to_string(c.size()) +
                                         " bytes, identical across reruns and thread counts"};
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
