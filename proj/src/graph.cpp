#include "resistnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "resistnet/error.hpp"
#include "resistnet/sampling.hpp"

namespace resistnet {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent_[std::max(a, b)] = std::min(a, b);
    --components_;
  }

  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

std::string label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw Error(Errc::invalid_argument, "graph must have at least one node");

  for (auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw Error(Errc::out_of_range, "edge " + label(e.u, e.v) + " references a node outside 1.." +
                                          std::to_string(n_));
    }
    if (e.u == e.v) throw Error(Errc::self_loop, "self-loop at node " + std::to_string(e.u + 1));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(Errc::nonpositive_weight, "edge " + label(e.u, e.v) + " has nonpositive weight");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }

  std::vector<std::size_t> order(edges_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(edges_[a].u, edges_[a].v) < std::tie(edges_[b].u, edges_[b].v);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Edge& a = edges_[order[k - 1]];
    const Edge& b = edges_[order[k]];
    if (a.u == b.u && a.v == b.v) throw Error(Errc::duplicate_edge, "duplicate edge " + label(a.u, a.v));
  }

  DisjointSets sets(n_);
  for (const auto& e : edges_) sets.unite(e.u, e.v);
  if (sets.components() != 1) {
    throw Error(Errc::disconnected,
                "graph is disconnected (" + std::to_string(sets.components()) + " components)");
  }

  offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    adjacency_[cursor[e.u]++] = {e.v, e.weight, k};
    adjacency_[cursor[e.v]++] = {e.u, e.weight, k};
  }
  for (std::size_t i = 0; i < n_; ++i) {
    std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1],
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
}

std::span<const Incidence> Graph::neighbors(std::size_t i) const {
  return std::span<const Incidence>(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t d = 0;
  for (std::size_t i = 0; i < n_; ++i) d = std::max(d, offsets_[i + 1] - offsets_[i]);
  return d;
}

std::size_t Graph::find_edge(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) return edge_count();
  const auto adj = neighbors(i);
  const auto it = std::lower_bound(adj.begin(), adj.end(), j,
                                   [](const Incidence& a, std::size_t key) { return a.neighbor < key; });
  return (it != adj.end() && it->neighbor == j) ? it->edge : edge_count();
}

bool Graph::unweighted() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
}

Graph Graph::parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& why) -> Error {
    return Error(Errc::parse, "edge list line " + std::to_string(line_no) + ": " + why);
  };

  if (!next_line()) throw Error(Errc::parse, "edge list is empty; expected header \"n m\"");
  long long n_raw = 0;
  long long m_raw = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n_raw >> m_raw) || (header >> extra)) throw fail("expected header \"n m\"");
    if (n_raw < 1 || m_raw < 0) throw fail("header counts out of range");
  }
  const auto n = static_cast<std::size_t>(n_raw);
  const auto m = static_cast<std::size_t>(m_raw);

  std::vector<Edge> edges;
  edges.reserve(m);
  while (next_line()) {
    std::istringstream fields(line);
    long long i = 0;
    long long j = 0;
    double w = 0.0;
    std::string extra;
    if (!(fields >> i >> j >> w) || (fields >> extra)) throw fail("expected \"i j w\"");
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n) {
      throw Error(Errc::out_of_range,
                  "edge list line " + std::to_string(line_no) + ": node label outside 1.." + std::to_string(n));
    }
    if (i == j) {
      throw Error(Errc::self_loop, "edge list line " + std::to_string(line_no) + ": self-loop at node " +
                                       std::to_string(i));
    }
    edges.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), w});
  }
  if (edges.size() != m) {
    throw Error(Errc::parse, "edge list header declares " + std::to_string(m) + " edges but " +
                                 std::to_string(edges.size()) + " were listed");
  }
  return Graph(n, std::move(edges));
}

Graph Graph::from_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open edge list " + path.string());
  return parse_edge_list(in);
}

void Graph::write_edge_list(std::ostream& out) const {
  out << n_ << ' ' << edges_.size() << '\n';
  const auto old_precision = out.precision(17);
  for (const auto& e : edges_) out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.weight << '\n';
  out.precision(old_precision);
}

Graph Graph::small_world(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 3) throw Error(Errc::out_of_range, "small-world generator needs n >= 3");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (m < n || m > max_edges) {
    throw Error(Errc::out_of_range, "small-world generator needs n <= m <= n(n-1)/2, got m = " +
                                        std::to_string(m));
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  edges.push_back({0, n - 1, 1.0});

  std::vector<Edge> candidates;
  candidates.reserve(max_edges - n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      candidates.push_back({i, j, 1.0});
    }
  }

  // Partial Fisher-Yates: the first m - n slots become a uniform sample
  // without replacement.
  Rng rng(seed);
  const std::size_t extra = m - n;
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t remaining = candidates.size() - k;
    auto pick = k + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(remaining));
    pick = std::min(pick, candidates.size() - 1);
    std::swap(candidates[k], candidates[pick]);
  }
  edges.insert(edges.end(), candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(extra));
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  return Graph(n, std::move(edges));
}

Graph Graph::barbell(std::size_t lobe_size) {
  if (lobe_size < 2) throw Error(Errc::out_of_range, "barbell lobes need at least 2 nodes");
  const std::size_t n = lobe_size;
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) + 1);
  for (std::size_t offset : {std::size_t{0}, n}) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) edges.push_back({offset + i, offset + j, 1.0});
    }
  }
  edges.push_back({n - 1, n, 1.0});
  return Graph(2 * n, std::move(edges));
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  }
  return Graph(n, std::move(edges));
}

Graph Graph::path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges));
}

Lobes barbell_lobes(std::size_t lobe_size) {
  Lobes lobes;
  for (std::size_t i = 0; i < lobe_size; ++i) {
    lobes.right.push_back(i);
    lobes.left.push_back(lobe_size + i);
  }
  return lobes;
}

LaplacianView::LaplacianView(const Graph& g) {
  const std::size_t n = g.node_count();
  offsets_.reserve(n + 1);
  entries_.reserve(n + 2 * g.edge_count());
  row_sq_norms_.reserve(n);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t diag_slot = entries_.size();
    entries_.push_back({i, 0.0});
    double off_sum = 0.0;
    double sq = 0.0;
    for (const auto& inc : g.neighbors(i)) {
      entries_.push_back({inc.neighbor, -inc.weight});
      off_sum += -inc.weight;
      sq += inc.weight * inc.weight;
    }
    entries_[diag_slot].value = -off_sum;
    sq += off_sum * off_sum;
    row_sq_norms_.push_back(sq);
    frobenius_sq_ += sq;
    offsets_.push_back(entries_.size());
  }
}

std::span<const RowEntry> LaplacianView::row(std::size_t i) const {
  return std::span<const RowEntry>(entries_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

double LaplacianView::row_sum(std::size_t i) const {
  const auto r = row(i);
  double off_sum = 0.0;
  for (std::size_t k = 1; k < r.size(); ++k) off_sum += r[k].value;
  return r.front().value + off_sum;
}

Eigen::MatrixXd LaplacianView::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& e : row(i)) L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(e.col)) = e.value;
  }
  return L;
}

}  // namespace resistnet
