#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "resistnet/graph.hpp"
#include "resistnet/sampling.hpp"
#include "resistnet/trace.hpp"

namespace resistnet {

enum class DrkVariant {
  standard,    // rows of L, clock rates r_i = s_i
  normalized,  // rows of S^-1/2 L, equal clock rates
};

enum class WakeSchedule {
  randomized,  // i.i.d. wake-ups with p_i = r_i / sum r
  cyclic,      // nodes 1..n in turn (deterministic Kaczmarz)
};

/// State of decentralized randomized Kaczmarz on L X = I - (1/n) 1 1^T.
///
/// Node j owns coordinate j of the iterates x^l for every column l < n-1
/// (0-based); the last column is never stored and is reconstructed as the
/// negated sum of the others. A wake-up of node i projects every column
/// iterate onto equation i, reading and writing only coordinates of i and
/// its neighbors.
class DrkState {
 public:
  DrkState(const Graph& g, DrkVariant variant);

  /// One activation of node i: for each column, gather neighbor coordinates,
  /// compute q_i, push the update back. Costs 2 d_i (n-1) scalar transfers.
  void wake(std::size_t i);

  /// Dense estimate X^k; the last column makes X^k 1 = 0 hold exactly.
  Eigen::MatrixXd assemble() const;

  double coordinate(std::size_t node, std::size_t column) const {
    return x_[node * columns_ + column];
  }
  std::size_t node_count() const noexcept { return n_; }
  std::size_t column_count() const noexcept { return columns_; }

  DrkVariant variant() const noexcept { return variant_; }
  std::span<const double> clock_rates() const noexcept { return rates_; }
  const DiscreteSampler& wake_sampler() const noexcept { return sampler_; }

  std::size_t event_index() const noexcept { return events_; }
  std::uint64_t comm_count() const noexcept { return comm_; }
  std::span<const std::size_t> wake_counts() const noexcept { return wake_counts_; }

  /// Expected scalar transfers per event, sum_i 2 p_i d_i (n-1).
  double expected_comm_per_event() const;

 private:
  const Graph* graph_;
  DrkVariant variant_;
  std::size_t n_;
  std::size_t columns_;
  std::vector<std::size_t> offsets_;
  std::vector<RowEntry> rows_;  // row i of L, scaled by 1/sqrt(s_i) when normalized
  std::vector<double> rhs_scale_;
  std::vector<double> row_sq_norms_;
  std::vector<double> rates_;
  DiscreteSampler sampler_;
  std::vector<double> x_;  // node-major, n_ x columns_
  std::vector<double> residual_;
  std::size_t events_ = 0;
  std::uint64_t comm_ = 0;
  std::vector<std::size_t> wake_counts_;
};

struct DrkOptions {
  DrkVariant variant = DrkVariant::standard;
  WakeSchedule schedule = WakeSchedule::randomized;
  std::size_t events = 10'000;
  std::size_t stride = 1;
  double floor = 1e-13;  // stop once the relative error drops below; 0 disables
  bool timed = false;    // also sample exponential inter-arrival times
};

struct DrkRunResult {
  PathTrace trace;
  Eigen::MatrixXd estimate;
  std::uint64_t comm_count = 0;
  std::vector<std::size_t> wake_counts;
};

/// Simulates one sample path and records ||X^k - L+||_F / ||L+||_F every
/// `stride` events against the supplied reference pseudoinverse.
DrkRunResult run_drk(const Graph& g, const Eigen::MatrixXd& reference, const DrkOptions& options,
                     std::uint64_t seed);

}  // namespace resistnet
