#include "resistnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "resistnet/drk.hpp"
#include "resistnet/error.hpp"
#include "resistnet/gossip.hpp"

namespace resistnet {

double metric(double rel_error) {
  return std::log(std::log1p(std::max(rel_error, kMetricFloor)));
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(Errc::parse, what + ": expected a nonnegative integer, got \"" + text + "\"");
  }
  errno = 0;
  const auto v = std::strtoull(t.c_str(), nullptr, 10);
  if (errno == ERANGE) throw Error(Errc::parse, what + ": integer out of range");
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw Error(Errc::parse, what + ": expected a number, got \"" + text + "\"");
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// graph specs

GraphSpec GraphSpec::parse(const std::string& text) {
  const auto parts = split(text, ':');
  GraphSpec spec;
  if (parts.size() >= 1 && parts[0] == "small-world") {
    if (parts.size() != 4) throw Error(Errc::parse, "graph spec: expected small-world:N:M:SEED");
    spec.kind = Kind::small_world;
    spec.n = parse_unsigned(parts[1], "small-world n");
    spec.m = parse_unsigned(parts[2], "small-world m");
    spec.seed = parse_unsigned(parts[3], "small-world seed");
  } else if (parts.size() >= 1 && parts[0] == "barbell") {
    if (parts.size() != 2) throw Error(Errc::parse, "graph spec: expected barbell:N");
    spec.kind = Kind::barbell;
    spec.n = parse_unsigned(parts[1], "barbell n");
  } else {
    if (text.empty()) throw Error(Errc::parse, "graph spec is empty");
    spec.kind = Kind::file;
    spec.path = text;
  }
  return spec;
}

std::string GraphSpec::to_string() const {
  switch (kind) {
    case Kind::small_world:
      return "small-world:" + std::to_string(n) + ":" + std::to_string(m) + ":" + std::to_string(seed);
    case Kind::barbell:
      return "barbell:" + std::to_string(n);
    case Kind::file:
      break;
  }
  return path;
}

LoadedGraph load_graph(const GraphSpec& spec) {
  switch (spec.kind) {
    case GraphSpec::Kind::small_world:
      return {Graph::small_world(spec.n, spec.m, spec.seed), std::nullopt};
    case GraphSpec::Kind::barbell:
      return {Graph::barbell(spec.n), barbell_lobes(spec.n)};
    case GraphSpec::Kind::file:
      break;
  }
  return {Graph::from_edge_list(spec.path), std::nullopt};
}

// ---------------------------------------------------------------------------
// algorithms and scenarios

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::drk_standard: return "drk-standard";
    case Algorithm::drk_normalized: return "drk-normalized";
    case Algorithm::cyclic_kaczmarz: return "cyclic-kaczmarz";
    case Algorithm::gossip_classic: return "gossip-classic";
    case Algorithm::gossip_effres: return "gossip-effres";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  for (auto a : {Algorithm::drk_standard, Algorithm::drk_normalized, Algorithm::cyclic_kaczmarz,
                 Algorithm::gossip_classic, Algorithm::gossip_effres}) {
    if (to_string(a) == trim(name)) return a;
  }
  throw Error(Errc::parse, "unknown algorithm \"" + name + "\"");
}

bool is_gossip(Algorithm a) {
  return a == Algorithm::gossip_classic || a == Algorithm::gossip_effres;
}

Scenario Scenario::parse(std::istream& in) {
  Scenario s;
  bool have_graph = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::parse, "scenario line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string where = "scenario key '" + key + "'";
    if (key == "graph") {
      s.graph = GraphSpec::parse(value);
      have_graph = true;
    } else if (key == "algorithm" || key == "algorithms") {
      s.algorithms.clear();
      for (const auto& name : split(value, ',')) s.algorithms.push_back(parse_algorithm(name));
    } else if (key == "events") {
      s.events = parse_unsigned(value, where);
    } else if (key == "seeds") {
      s.seeds = parse_unsigned(value, where);
    } else if (key == "seed") {
      s.seed = parse_unsigned(value, where);
    } else if (key == "stride") {
      s.stride = parse_unsigned(value, where);
    } else if (key == "out") {
      s.out = value;
    } else if (key == "init") {
      s.init = value;
    } else if (key == "resistances") {
      s.resistances = value;
    } else if (key == "report_threshold") {
      s.report_threshold = parse_double(value, where);
    } else if (key == "floor") {
      s.floor = parse_double(value, where);
    } else if (key == "timed") {
      if (value != "true" && value != "false") throw Error(Errc::parse, where + ": expected true or false");
      s.timed = value == "true";
    } else if (key == "threads") {
      s.threads = parse_unsigned(value, where);
    } else {
      throw Error(Errc::parse, "scenario line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!have_graph) throw Error(Errc::parse, "scenario has no graph");
  if (s.algorithms.empty()) throw Error(Errc::parse, "scenario has no algorithm");
  if (s.events < 1 || s.seeds < 1 || s.stride < 1) {
    throw Error(Errc::parse, "scenario events, seeds and stride must be positive");
  }
  if (s.algorithms.size() > 1 && !s.out.empty() && s.out.find("{algorithm}") == std::string::npos) {
    throw Error(Errc::parse, "scenario with several algorithms needs \"{algorithm}\" in out");
  }
  return s;
}

Scenario Scenario::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open scenario " + path.string());
  return parse(in);
}

void Scenario::write(std::ostream& out) const {
  out << "graph = " << graph.to_string() << '\n';
  out << "algorithms = ";
  for (std::size_t k = 0; k < algorithms.size(); ++k) out << (k ? "," : "") << to_string(algorithms[k]);
  out << '\n';
  out << "events = " << events << '\n';
  out << "seeds = " << seeds << '\n';
  out << "seed = " << seed << '\n';
  out << "stride = " << stride << '\n';
  if (!this->out.empty()) out << "out = " << this->out << '\n';
  out << "init = " << init << '\n';
  if (!resistances.empty()) out << "resistances = " << resistances << '\n';
  out << "report_threshold = " << format_double(report_threshold) << '\n';
  out << "floor = " << format_double(floor) << '\n';
  out << "timed = " << (timed ? "true" : "false") << '\n';
  if (threads != 0) out << "threads = " << threads << '\n';
}

std::filesystem::path Scenario::output_path(Algorithm a) const {
  std::string path = out;
  const auto pos = path.find("{algorithm}");
  if (pos != std::string::npos) path.replace(pos, std::string("{algorithm}").size(), to_string(a));
  return path;
}

// ---------------------------------------------------------------------------
// traces

std::vector<std::size_t> sample_grid(std::size_t events, std::size_t stride) {
  stride = std::max<std::size_t>(stride, 1);
  std::vector<std::size_t> grid;
  for (std::size_t k = 0; k <= events; k += stride) grid.push_back(k);
  if (grid.back() != events) grid.push_back(events);
  return grid;
}

ConvergenceTrace aggregate(const std::vector<PathTrace>& paths, const std::vector<std::size_t>& grid,
                           ConvergenceTrace::Kind kind) {
  if (paths.empty()) throw Error(Errc::invalid_argument, "no sample paths to aggregate");
  ConvergenceTrace t;
  t.kind = kind;
  t.events = grid;
  const std::size_t len = grid.size();
  const bool timed = kind == ConvergenceTrace::Kind::drk && !paths.front().time.empty();
  t.has_lobes = kind == ConvergenceTrace::Kind::gossip && !paths.front().lobe_left.empty();

  t.metric_mean.assign(len, 0.0);
  if (kind == ConvergenceTrace::Kind::drk) t.comm_mean.assign(len, 0.0);
  if (timed) t.time_mean.assign(len, 0.0);
  if (t.has_lobes) {
    t.lobe_left_mean.assign(len, 0.0);
    t.lobe_right_mean.assign(len, 0.0);
  }

  auto held = [](const std::vector<double>& v, std::size_t k) { return v[std::min(k, v.size() - 1)]; };
  for (const auto& p : paths) {
    if (p.events.empty() || p.events.size() > len || !std::equal(p.events.begin(), p.events.end(), grid.begin())) {
      throw Error(Errc::mismatch, "sample path indices do not match the sampling grid");
    }
    for (std::size_t k = 0; k < len; ++k) {
      t.metric_mean[k] += metric(held(p.rel_error, k));
      if (kind == ConvergenceTrace::Kind::drk) t.comm_mean[k] += held(p.comm, k);
      if (timed) t.time_mean[k] += held(p.time, k);
      if (t.has_lobes) {
        t.lobe_left_mean[k] += held(p.lobe_left, k);
        t.lobe_right_mean[k] += held(p.lobe_right, k);
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(paths.size());
  for (auto* column : {&t.metric_mean, &t.comm_mean, &t.time_mean, &t.lobe_left_mean, &t.lobe_right_mean}) {
    for (double& v : *column) v *= inv;
  }
  return t;
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& t) {
  if (t.kind == ConvergenceTrace::Kind::drk) {
    out << "event,metric_mean,comm_cumulative_mean" << (t.time_mean.empty() ? "" : ",time_mean") << '\n';
    for (std::size_t k = 0; k < t.events.size(); ++k) {
      out << t.events[k] << ',' << format_double(t.metric_mean[k]) << ',' << format_double(t.comm_mean[k]);
      if (!t.time_mean.empty()) out << ',' << format_double(t.time_mean[k]);
      out << '\n';
    }
  } else {
    out << "event,metric_mean,lobeL_mean,lobeR_mean\n";
    for (std::size_t k = 0; k < t.events.size(); ++k) {
      out << t.events[k] << ',' << format_double(t.metric_mean[k]) << ',';
      if (t.has_lobes) out << format_double(t.lobe_left_mean[k]) << ',' << format_double(t.lobe_right_mean[k]);
      else out << ',';
      out << '\n';
    }
  }
}

ConvergenceTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::parse, "trace CSV is empty");
  line = trim(line);
  ConvergenceTrace t;
  bool timed = false;
  if (line == "event,metric_mean,comm_cumulative_mean") {
    t.kind = ConvergenceTrace::Kind::drk;
  } else if (line == "event,metric_mean,comm_cumulative_mean,time_mean") {
    t.kind = ConvergenceTrace::Kind::drk;
    timed = true;
  } else if (line == "event,metric_mean,lobeL_mean,lobeR_mean") {
    t.kind = ConvergenceTrace::Kind::gossip;
  } else {
    throw Error(Errc::parse, "unrecognized trace CSV header \"" + line + "\"");
  }
  const std::size_t expected = (t.kind == ConvergenceTrace::Kind::drk) ? (timed ? 4 : 3) : 4;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    const std::string where = "trace CSV row " + std::to_string(row);
    if (f.size() != expected) throw Error(Errc::parse, where + ": expected " + std::to_string(expected) + " fields");
    t.events.push_back(parse_unsigned(f[0], where));
    t.metric_mean.push_back(parse_double(f[1], where));
    if (t.kind == ConvergenceTrace::Kind::drk) {
      t.comm_mean.push_back(parse_double(f[2], where));
      if (timed) t.time_mean.push_back(parse_double(f[3], where));
    } else {
      const bool empty = f[2].empty() && f[3].empty();
      if (row == 2) t.has_lobes = !empty;
      if (t.has_lobes == empty) throw Error(Errc::parse, where + ": lobe columns inconsistent");
      if (t.has_lobes) {
        t.lobe_left_mean.push_back(parse_double(f[2], where));
        t.lobe_right_mean.push_back(parse_double(f[3], where));
      }
    }
  }
  return t;
}

ConvergenceTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open trace " + path.string());
  return read_trace_csv(in);
}

Comparison compare(const ConvergenceTrace& a, const ConvergenceTrace& b, double metric_threshold) {
  if (a.events != b.events) throw Error(Errc::mismatch, "traces have different sample indices");
  auto crossing = [&](const ConvergenceTrace& t) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < t.events.size(); ++k) {
      if (t.metric_mean[k] <= metric_threshold) return t.events[k];
    }
    return std::nullopt;
  };
  Comparison c;
  c.events_a = crossing(a);
  c.events_b = crossing(b);
  if (c.events_a && c.events_b) {
    c.speedup = *c.events_b == 0 ? (*c.events_a == 0 ? 1.0 : std::numeric_limits<double>::infinity())
                                 : static_cast<double>(*c.events_a) / static_cast<double>(*c.events_b);
  }
  return c;
}

// ---------------------------------------------------------------------------
// scenario runner

namespace {

/// Evaluates `job(k)` for k in [0, count) on a small worker pool. Results are
/// indexed by k, so completion order never leaks into the output.
std::vector<PathTrace> run_paths(std::size_t count, std::size_t threads,
                                 const std::function<PathTrace(std::size_t)>& job) {
  std::vector<PathTrace> out(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) out[k] = job(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          out[k] = job(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> load_initial_values(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open initial values " + path);
  std::vector<double> y;
  double v = 0.0;
  while (in >> v) y.push_back(v);
  if (!in.eof()) throw Error(Errc::parse, "initial values file " + path + " holds a non-number");
  if (y.size() != n) {
    throw Error(Errc::mismatch, "initial values file has " + std::to_string(y.size()) + " values for " +
                                    std::to_string(n) + " nodes");
  }
  return y;
}

constexpr std::uint64_t kInitStream = 0xa0761d6478bd642full;

AlgorithmReport run_algorithm(const Scenario& s, const LoadedGraph& lg, Algorithm algorithm,
                              const Eigen::MatrixXd* reference, const ResistanceTable* resistances) {
  const Graph& g = lg.graph;
  AlgorithmReport report;
  report.algorithm = algorithm;
  report.output = s.out.empty() ? std::filesystem::path{} : s.output_path(algorithm);
  const auto grid = sample_grid(s.events, s.stride);

  // The cyclic sweep is deterministic; one path stands for all seeds.
  const std::size_t count = algorithm == Algorithm::cyclic_kaczmarz ? 1 : s.seeds;
  for (std::size_t k = 0; k < count; ++k) report.seeds.push_back(s.seed + k);

  if (!is_gossip(algorithm)) {
    DrkOptions opt;
    opt.variant = algorithm == Algorithm::drk_normalized ? DrkVariant::normalized : DrkVariant::standard;
    opt.schedule = algorithm == Algorithm::cyclic_kaczmarz ? WakeSchedule::cyclic : WakeSchedule::randomized;
    opt.events = s.events;
    opt.stride = s.stride;
    opt.floor = s.floor;
    opt.timed = s.timed;
    report.paths = run_paths(count, s.threads, [&](std::size_t k) {
      return run_drk(g, *reference, opt, report.seeds[k]).trace;
    });
    report.trace = aggregate(report.paths, grid, ConvergenceTrace::Kind::drk);
  } else {
    const GossipConfig config = algorithm == Algorithm::gossip_classic
                                    ? GossipConfig::classic(g)
                                    : GossipConfig::effective_resistance(g, *resistances);
    std::optional<std::vector<double>> fixed_init;
    if (s.init.rfind("file:", 0) == 0) {
      fixed_init = load_initial_values(s.init.substr(5), g.node_count());
    } else if (s.init != "barbell-normal") {
      throw Error(Errc::parse, "unknown init \"" + s.init + "\"");
    } else if (!lg.lobes) {
      throw Error(Errc::invalid_argument, "barbell-normal init needs a barbell graph");
    }
    GossipOptions opt;
    opt.events = s.events;
    opt.stride = s.stride;
    opt.floor = s.floor;
    report.paths = run_paths(count, s.threads, [&](std::size_t k) {
      std::vector<double> y0;
      if (fixed_init) {
        y0 = *fixed_init;
      } else {
        Rng init_rng(report.seeds[k] ^ kInitStream);
        y0 = barbell_normal_init(*lg.lobes, init_rng);
      }
      return run_gossip(g, y0, config, report.seeds[k], opt, lg.lobes).trace;
    });
    report.trace = aggregate(report.paths, grid, ConvergenceTrace::Kind::gossip);
  }

  const double threshold_metric = metric(s.report_threshold);
  for (std::size_t k = 0; k < report.trace.events.size(); ++k) {
    if (report.trace.metric_mean[k] <= threshold_metric) {
      report.trace_events_to_threshold = report.trace.events[k];
      break;
    }
  }
  double hit_sum = 0.0;
  double comm_sum = 0.0;
  for (const auto& p : report.paths) {
    const auto hit = p.first_below(s.report_threshold);
    report.threshold_events.push_back(hit);
    if (hit) {
      ++report.paths_reaching_threshold;
      hit_sum += static_cast<double>(*hit);
    }
    if (!p.comm.empty() && p.events_run > 0) comm_sum += p.comm.back() / static_cast<double>(p.events_run);
  }
  if (report.paths_reaching_threshold == report.paths.size()) {
    report.mean_events_to_threshold = hit_sum / static_cast<double>(report.paths.size());
  }
  report.mean_comm_per_event = comm_sum / static_cast<double>(report.paths.size());
  report.final_metric = report.trace.metric_mean.back();
  return report;
}

}  // namespace

ScenarioReport run_scenario(const Scenario& s, bool write_files) {
  ScenarioReport report;
  report.scenario = s;
  const LoadedGraph lg = load_graph(s.graph);

  std::optional<SpectralData> sd;
  std::optional<ResistanceTable> resistances;
  for (auto a : s.algorithms) {
    if (!is_gossip(a) || (a == Algorithm::gossip_effres && s.resistances.empty())) {
      if (!sd) sd = spectral(lg.graph);
    }
    if (a == Algorithm::gossip_effres && !resistances) {
      resistances = s.resistances.empty() ? effective_resistances(*sd, lg.graph)
                                          : read_resistance_csv(s.resistances, lg.graph);
    }
  }

  for (auto a : s.algorithms) {
    report.algorithms.push_back(run_algorithm(s, lg, a, sd ? &sd->pseudoinverse : nullptr,
                                              resistances ? &*resistances : nullptr));
  }

  if (write_files) {
    for (const auto& r : report.algorithms) {
      if (r.output.empty()) continue;
      std::ofstream csv(r.output);
      if (!csv) throw Error(Errc::io, "cannot write " + r.output.string());
      write_trace_csv(csv, r.trace);
      std::ofstream log(r.output.string() + ".paths.csv");
      if (!log) throw Error(Errc::io, "cannot write " + r.output.string() + ".paths.csv");
      write_path_log(log, r);
    }
  }
  return report;
}

void write_path_log(std::ostream& out, const AlgorithmReport& report) {
  out << "seed,events_run,floor_event,threshold_event\n";
  for (std::size_t k = 0; k < report.paths.size(); ++k) {
    const auto& p = report.paths[k];
    out << report.seeds[k] << ',' << p.events_run << ',';
    if (p.floor_event) out << *p.floor_event;
    out << ',';
    if (report.threshold_events[k]) out << *report.threshold_events[k];
    out << '\n';
  }
}

void print_report(std::ostream& out, const ScenarioReport& report) {
  const Scenario& s = report.scenario;
  out << "scenario: graph=" << s.graph.to_string() << " events=" << s.events << " seeds=" << s.seeds
      << " seed=" << s.seed << " stride=" << s.stride << '\n';
  for (const auto& r : report.algorithms) {
    out << "  " << to_string(r.algorithm) << ": final_metric=" << format_double(r.final_metric);
    char label[32];
    std::snprintf(label, sizeof label, "%g", s.report_threshold);
    out << " threshold=" << label << " mean_trace_events_to_threshold=";
    if (r.trace_events_to_threshold) out << *r.trace_events_to_threshold;
    else out << "not-reached";
    out << " mean_path_events_to_threshold=";
    if (r.mean_events_to_threshold) out << format_double(*r.mean_events_to_threshold);
    else out << "not-reached(" << r.paths_reaching_threshold << '/' << r.paths.size() << ')';
    if (!is_gossip(r.algorithm)) out << " comm_per_event=" << format_double(r.mean_comm_per_event);
    std::size_t finite = 0;
    for (const auto& p : r.paths) finite += p.floor_event.has_value();
    out << " paths_at_floor=" << finite << '/' << r.paths.size();
    if (!r.output.empty()) out << " out=" << r.output.string();
    out << '\n';
  }
  const double threshold_metric = metric(s.report_threshold);
  for (std::size_t k = 1; k < report.algorithms.size(); ++k) {
    const auto& a = report.algorithms[0];
    const auto& b = report.algorithms[k];
    const Comparison c = compare(a.trace, b.trace, threshold_metric);
    out << "  speedup " << to_string(b.algorithm) << " vs " << to_string(a.algorithm) << ": ";
    if (c.speedup) out << format_double(*c.speedup);
    else out << "not-reached";
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// resistance tables

void write_resistance_csv(std::ostream& out, const ResistanceTable& table, const Graph& g, bool edges_only) {
  out << "i,j,R\n";
  if (edges_only) {
    for (const auto& e : g.edges()) {
      out << e.u + 1 << ',' << e.v + 1 << ',' << format_double(table(e.u, e.v)) << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    for (std::size_t j = i + 1; j < g.node_count(); ++j) {
      out << i + 1 << ',' << j + 1 << ',' << format_double(table(i, j)) << '\n';
    }
  }
}

ResistanceTable read_resistance_csv(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open resistance table " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != "i,j,R") {
    throw Error(Errc::parse, "resistance table must start with header i,j,R");
  }
  const auto n = static_cast<Eigen::Index>(g.node_count());
  ResistanceTable t;
  t.pairs = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::quiet_NaN());
  t.pairs.diagonal().setZero();
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    const std::string where = "resistance table row " + std::to_string(row);
    if (f.size() != 3) throw Error(Errc::parse, where + ": expected i,j,R");
    const auto i = parse_unsigned(f[0], where);
    const auto j = parse_unsigned(f[1], where);
    if (i < 1 || j < 1 || i > g.node_count() || j > g.node_count() || i == j) {
      throw Error(Errc::out_of_range, where + ": bad node pair");
    }
    const double r = parse_double(f[2], where);
    t.pairs(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = r;
    t.pairs(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(i - 1)) = r;
  }
  t.incident_sum.assign(g.node_count(), 0.0);
  for (const auto& e : g.edges()) {
    const double r = t(e.u, e.v);
    if (std::isnan(r)) {
      throw Error(Errc::mismatch, "resistance table misses edge (" + std::to_string(e.u + 1) + ", " +
                                      std::to_string(e.v + 1) + ")");
    }
    t.incident_sum[e.u] += r;
    t.incident_sum[e.v] += r;
    t.edge_total += r;
  }
  return t;
}

}  // namespace resistnet
