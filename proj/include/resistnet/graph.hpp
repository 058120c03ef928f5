#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace resistnet {

/// Undirected weighted edge, stored once with u < v (0-based).
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

/// One entry of a node's adjacency list.
struct Incidence {
  std::size_t neighbor = 0;
  double weight = 1.0;
  std::size_t edge = 0;  // index into Graph::edges()
};

/// Weighted, undirected, connected simple graph. Immutable once built.
///
/// Nodes are 0-based internally; every file format and report uses 1-based
/// labels. Construction rejects self-loops, repeated pairs, nonpositive or
/// non-finite weights, and disconnected edge sets.
class Graph {
 public:
  Graph(std::size_t n, std::vector<Edge> edges);

  /// Reads the edge-list format: header "n m", then m lines "i j w".
  static Graph from_edge_list(const std::filesystem::path& path);
  static Graph parse_edge_list(std::istream& in);

  /// Ring 1-2-...-n-1 plus m-n extra pairs drawn uniformly without
  /// replacement from the remaining upper-triangular pairs. Unit weights.
  static Graph small_world(std::size_t n, std::size_t m, std::uint64_t seed);

  /// Two copies of K_n joined by the bridge n -- n+1 (1-based). Nodes 1..n
  /// form the right lobe, n+1..2n the left lobe. Unit weights.
  static Graph barbell(std::size_t lobe_size);

  /// Complete graph K_n, unit weights.
  static Graph complete(std::size_t n);

  /// Path graph P_n, unit weights.
  static Graph path(std::size_t n);

  void write_edge_list(std::ostream& out) const;

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Incidence> neighbors(std::size_t i) const;
  std::size_t degree(std::size_t i) const { return neighbors(i).size(); }
  std::size_t max_degree() const noexcept;

  /// Edge index of {i, j}, or edge_count() when the pair is not an edge.
  std::size_t find_edge(std::size_t i, std::size_t j) const;
  bool has_edge(std::size_t i, std::size_t j) const { return find_edge(i, j) != edge_count(); }

  bool unweighted() const noexcept;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> adjacency_;
};

/// Node sets of a barbell graph, 0-based.
struct Lobes {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

Lobes barbell_lobes(std::size_t lobe_size);

/// Sparse coefficient entry of a matrix row.
struct RowEntry {
  std::size_t col = 0;
  double value = 0.0;
};

/// Row-accessible weighted Laplacian.
///
/// Row i holds the diagonal first, followed by -w_ij for each neighbor in
/// adjacency order. The diagonal is the negated sum of the stored
/// off-diagonals, so `row_sum(i)` is exactly zero.
class LaplacianView {
 public:
  explicit LaplacianView(const Graph& g);

  std::size_t size() const noexcept { return row_sq_norms_.size(); }
  std::span<const RowEntry> row(std::size_t i) const;
  double diagonal(std::size_t i) const { return row(i).front().value; }

  /// s_i = sum of squared entries of row i.
  double row_sq_norm(std::size_t i) const { return row_sq_norms_[i]; }
  std::span<const double> row_sq_norms() const noexcept { return row_sq_norms_; }
  double frobenius_sq() const noexcept { return frobenius_sq_; }

  /// Off-diagonals accumulated in storage order, then the diagonal added.
  double row_sum(std::size_t i) const;

  Eigen::MatrixXd dense() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<RowEntry> entries_;
  std::vector<double> row_sq_norms_;
  double frobenius_sq_ = 0.0;
};

inline LaplacianView laplacian(const Graph& g) { return LaplacianView(g); }

}  // namespace resistnet
