#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "resistnet/graph.hpp"
#include "resistnet/spectral.hpp"
#include "resistnet/trace.hpp"

namespace resistnet {

inline constexpr double kMetricFloor = 1e-15;

/// ln(ln(1 + max(rel_error, 1e-15))), the plotted convergence measure.
double metric(double rel_error);

/// Graph source: an edge-list path, "small-world:N:M:SEED" or "barbell:N".
struct GraphSpec {
  enum class Kind { file, small_world, barbell };
  Kind kind = Kind::file;
  std::string path;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;

  static GraphSpec parse(const std::string& text);
  std::string to_string() const;
};

struct LoadedGraph {
  Graph graph;
  std::optional<Lobes> lobes;  // barbell generator only
};

LoadedGraph load_graph(const GraphSpec& spec);

enum class Algorithm { drk_standard, drk_normalized, cyclic_kaczmarz, gossip_classic, gossip_effres };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);
bool is_gossip(Algorithm a);

/// One experiment: a graph, the algorithms to run on it and the sampling
/// budget. Stored as flat "key = value" text; see README for the keys.
struct Scenario {
  GraphSpec graph;
  std::vector<Algorithm> algorithms;
  std::size_t events = 10'000;
  std::size_t seeds = 100;
  std::uint64_t seed = 1;  // path s uses seed + s
  std::size_t stride = 1;
  std::string out;          // may contain "{algorithm}"; required with several algorithms
  std::string init = "barbell-normal";  // gossip: "barbell-normal" or "file:<path>"
  std::string resistances;  // gossip-effres: "i,j,R" CSV; empty means the dense oracle
  double report_threshold = 1e-6;  // relative error used in the summary
  double floor = 1e-13;
  bool timed = false;
  std::size_t threads = 0;  // 0 = hardware concurrency

  static Scenario parse(std::istream& in);
  static Scenario load(const std::filesystem::path& path);
  void write(std::ostream& out) const;
  std::filesystem::path output_path(Algorithm a) const;
};

/// Mean-over-seeds trace, the CSV contract.
///
/// D-RK traces carry `comm_mean` (and `time_mean` when timed); gossip traces
/// carry the lobe columns, empty when the graph has no lobes.
struct ConvergenceTrace {
  enum class Kind { drk, gossip };
  Kind kind = Kind::drk;
  std::vector<std::size_t> events;
  std::vector<double> metric_mean;
  std::vector<double> comm_mean;
  std::vector<double> time_mean;
  std::vector<double> lobe_left_mean;
  std::vector<double> lobe_right_mean;
  bool has_lobes = false;
};

/// 0, stride, 2 stride, ..., plus `events` itself.
std::vector<std::size_t> sample_grid(std::size_t events, std::size_t stride);

/// Averages the metric of each path, sample by sample. Paths that stopped
/// early hold their last sample. Throws Errc::mismatch if a path's sample
/// indices are not a prefix of `grid`.
ConvergenceTrace aggregate(const std::vector<PathTrace>& paths, const std::vector<std::size_t>& grid,
                           ConvergenceTrace::Kind kind);

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);
ConvergenceTrace read_trace_csv(std::istream& in);
ConvergenceTrace read_trace_csv(const std::filesystem::path& path);

struct Comparison {
  std::optional<std::size_t> events_a;
  std::optional<std::size_t> events_b;
  std::optional<double> speedup;  // events_a / events_b, only when both crossed
};

/// First sample at which each mean metric is <= `metric_threshold`.
Comparison compare(const ConvergenceTrace& a, const ConvergenceTrace& b, double metric_threshold);

struct AlgorithmReport {
  Algorithm algorithm;
  ConvergenceTrace trace;
  std::vector<PathTrace> paths;
  std::vector<std::uint64_t> seeds;
  std::vector<std::optional<std::size_t>> threshold_events;  // per path, at report_threshold
  std::optional<std::size_t> trace_events_to_threshold;  // mean-metric crossing
  std::optional<double> mean_events_to_threshold;         // over paths; empty unless all crossed
  std::size_t paths_reaching_threshold = 0;
  double mean_comm_per_event = 0.0;
  double final_metric = 0.0;
  std::filesystem::path output;
};

struct ScenarioReport {
  Scenario scenario;
  std::vector<AlgorithmReport> algorithms;
};

/// Runs every algorithm of the scenario over seeds seed..seed+seeds-1.
/// Files are written only after all runs succeed, when `write_files`.
ScenarioReport run_scenario(const Scenario& s, bool write_files = true);

void print_report(std::ostream& out, const ScenarioReport& report);

/// Per-path log: seed, events run, finite-convergence event, threshold event.
void write_path_log(std::ostream& out, const AlgorithmReport& report);

void write_resistance_csv(std::ostream& out, const ResistanceTable& table, const Graph& g,
                          bool edges_only);
ResistanceTable read_resistance_csv(const std::filesystem::path& path, const Graph& g);

}  // namespace resistnet
