// resistnet: effective resistances by decentralized Kaczmarz, and gossip
// averaging driven by them.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "resistnet/drk.hpp"
#include "resistnet/error.hpp"
#include "resistnet/experiment.hpp"
#include "resistnet/spectral.hpp"

namespace {

using namespace resistnet;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_graph(const Graph& g, const std::string& out) {
  if (out.empty() || out == "-") {
    g.write_edge_list(std::cout);
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(Errc::io, "cannot write " + out);
  g.write_edge_list(f);
}

int cmd_oracle(const std::string& graph, const std::string& table_out, bool all_pairs) {
  const LoadedGraph lg = load_graph(GraphSpec::parse(graph));
  const Graph& g = lg.graph;
  const SpectralData sd = spectral(g);
  const ConjectureCheck c = check_conjecture(g);
  std::cout << "n=" << g.node_count() << " m=" << g.edge_count() << '\n';
  std::cout << "lambda_min_plus=" << fmt(sd.lambda_min_plus) << '\n';
  std::cout << "rho=" << fmt(rate_rho_standard(g)) << '\n';
  std::cout << "rho_normalized=" << fmt(rate_rho_normalized(g)) << '\n';
  std::cout << "conjecture lhs=" << fmt(c.lhs) << " rhs=" << fmt(c.rhs) << " holds=" << (c.holds ? "true" : "false")
            << '\n';
  if (!table_out.empty()) {
    const ResistanceTable r = effective_resistances(sd, g);
    if (table_out == "-") {
      write_resistance_csv(std::cout, r, g, !all_pairs);
    } else {
      std::ofstream f(table_out);
      if (!f) throw Error(Errc::io, "cannot write " + table_out);
      write_resistance_csv(f, r, g, !all_pairs);
    }
  }
  return 0;
}

int cmd_run(const Scenario& s) {
  const ScenarioReport report = run_scenario(s);
  print_report(std::cout, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective resistances by decentralized randomized Kaczmarz, and resistance-weighted gossip"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a graph in edge-list format");
  gen->require_subcommand(1);
  std::string gen_out;
  std::size_t sw_n = 0;
  std::size_t sw_m = 0;
  std::uint64_t sw_seed = 1;
  auto* gen_sw = gen->add_subcommand("small-world", "Ring plus uniformly random chords");
  gen_sw->add_option("--n", sw_n, "Node count")->required();
  gen_sw->add_option("--m", sw_m, "Edge count")->required();
  gen_sw->add_option("--seed", sw_seed, "RNG seed");
  gen_sw->add_option("--out", gen_out, "Output file (default stdout)");
  std::size_t bb_n = 0;
  auto* gen_bb = gen->add_subcommand("barbell", "Two K_n joined by one bridge");
  gen_bb->add_option("--n", bb_n, "Lobe size")->required();
  gen_bb->add_option("--out", gen_out, "Output file (default stdout)");

  std::string graph;
  std::string table_out;
  bool all_pairs = false;
  auto* oracle = app.add_subcommand("oracle", "Dense spectral reference values");
  oracle->add_option("--graph", graph, "Edge-list file, small-world:N:M:SEED or barbell:N")->required();
  oracle->add_option("--resistances", table_out, "Write the resistance table as CSV i,j,R ('-' for stdout)");
  oracle->add_flag("--all-pairs", all_pairs, "Include non-adjacent pairs in the table");

  Scenario s;
  s.out = "trace.csv";
  std::string variant = "standard";
  bool cyclic = false;
  std::string estimate_out;
  auto* drk = app.add_subcommand("drk", "Simulate decentralized randomized Kaczmarz");
  drk->add_option("--graph", graph, "Edge-list file, small-world:N:M:SEED or barbell:N")->required();
  drk->add_option("--variant", variant, "standard or normalized")->check(CLI::IsMember({"standard", "normalized"}));
  drk->add_flag("--cyclic", cyclic, "Wake nodes in fixed order instead (deterministic Kaczmarz)");
  drk->add_option("--events", s.events, "Wake-ups per sample path");
  drk->add_option("--seeds", s.seeds, "Number of sample paths");
  drk->add_option("--seed", s.seed, "First seed");
  drk->add_option("--stride", s.stride, "Record every d events");
  drk->add_option("--out", s.out, "Trace CSV");
  drk->add_option("--threshold", s.report_threshold, "Relative error reported in the summary");
  drk->add_flag("--timed", s.timed, "Also sample exponential arrival times");
  drk->add_option("--threads", s.threads, "Worker threads (0 = all cores)");
  drk->add_option("--resistances-out", estimate_out, "Write edge resistances from the first path's estimate");

  std::string scheme = "classic";
  auto* gossip = app.add_subcommand("gossip", "Simulate randomized gossip averaging");
  gossip->add_option("--graph", graph, "Edge-list file, small-world:N:M:SEED or barbell:N")->required();
  gossip->add_option("--scheme", scheme, "classic or effres")->check(CLI::IsMember({"classic", "effres"}));
  gossip->add_option("--events", s.events, "Events per sample path");
  gossip->add_option("--seeds", s.seeds, "Number of sample paths");
  gossip->add_option("--seed", s.seed, "First seed");
  gossip->add_option("--stride", s.stride, "Record every d events");
  gossip->add_option("--init", s.init, "barbell-normal or file:<path>");
  gossip->add_option("--resistances", s.resistances, "Resistance CSV (default: dense oracle)");
  gossip->add_option("--out", s.out, "Trace CSV");
  gossip->add_option("--threshold", s.report_threshold, "Relative error reported in the summary");
  gossip->add_option("--threads", s.threads, "Worker threads (0 = all cores)");

  std::string scenario_path;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);

  std::string trace_a;
  std::string trace_b;
  double threshold = 1e-3;
  auto* cmp = app.add_subcommand("compare", "Events until two mean traces cross a relative-error threshold");
  cmp->add_option("--a", trace_a, "Trace CSV A")->required()->check(CLI::ExistingFile);
  cmp->add_option("--b", trace_b, "Trace CSV B")->required()->check(CLI::ExistingFile);
  cmp->add_option("--threshold", threshold, "Relative error; compared as metric(threshold)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      write_graph(gen_sw->parsed() ? Graph::small_world(sw_n, sw_m, sw_seed) : Graph::barbell(bb_n), gen_out);
      return 0;
    }
    if (oracle->parsed()) return cmd_oracle(graph, table_out, all_pairs);
    if (drk->parsed()) {
      s.graph = GraphSpec::parse(graph);
      s.algorithms = {cyclic ? Algorithm::cyclic_kaczmarz
                             : (variant == "normalized" ? Algorithm::drk_normalized : Algorithm::drk_standard)};
      cmd_run(s);
      if (!estimate_out.empty()) {
        const LoadedGraph lg = load_graph(s.graph);
        const SpectralData sd = spectral(lg.graph);
        DrkOptions opt;
        opt.variant = variant == "normalized" ? DrkVariant::normalized : DrkVariant::standard;
        opt.schedule = cyclic ? WakeSchedule::cyclic : WakeSchedule::randomized;
        opt.events = s.events;
        opt.stride = s.stride;
        const DrkRunResult r = run_drk(lg.graph, sd.pseudoinverse, opt, s.seed);
        std::ofstream f(estimate_out);
        if (!f) throw Error(Errc::io, "cannot write " + estimate_out);
        write_resistance_csv(f, resistances_from_pseudoinverse(r.estimate, lg.graph), lg.graph, true);
      }
      return 0;
    }
    if (gossip->parsed()) {
      s.graph = GraphSpec::parse(graph);
      s.algorithms = {scheme == "effres" ? Algorithm::gossip_effres : Algorithm::gossip_classic};
      return cmd_run(s);
    }
    if (run->parsed()) return cmd_run(Scenario::load(scenario_path));
    if (cmp->parsed()) {
      const Comparison c = compare(read_trace_csv(trace_a), read_trace_csv(trace_b), metric(threshold));
      auto show = [](const std::optional<std::size_t>& e) {
        return e ? std::to_string(*e) : std::string("not-reached");
      };
      std::cout << "events_a=" << show(c.events_a) << " events_b=" << show(c.events_b)
                << " speedup=" << (c.speedup ? fmt(*c.speedup) : std::string("not-reached")) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
