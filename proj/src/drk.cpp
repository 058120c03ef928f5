#include "resistnet/drk.hpp"

#include <algorithm>
#include <cmath>

#include "resistnet/error.hpp"

namespace resistnet {

DrkState::DrkState(const Graph& g, DrkVariant variant)
    : graph_(&g), variant_(variant), n_(g.node_count()), columns_(g.node_count() - 1) {
  if (n_ < 2) throw Error(Errc::invalid_argument, "D-RK needs at least two nodes");
  const LaplacianView lap(g);
  offsets_.reserve(n_ + 1);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double s = lap.row_sq_norm(i);
    const double scale = variant == DrkVariant::normalized ? 1.0 / std::sqrt(s) : 1.0;
    double sq = 0.0;
    for (const auto& e : lap.row(i)) {
      rows_.push_back({e.col, scale * e.value});
      sq += (scale * e.value) * (scale * e.value);
    }
    offsets_.push_back(rows_.size());
    rhs_scale_.push_back(scale);
    row_sq_norms_.push_back(sq);
    rates_.push_back(variant == DrkVariant::normalized ? 1.0 : s);
  }
  sampler_ = DiscreteSampler(rates_);
  x_.assign(n_ * columns_, 0.0);
  residual_.assign(columns_, 0.0);
  wake_counts_.assign(n_, 0);
}

void DrkState::wake(std::size_t i) {
  const std::span<const RowEntry> row(rows_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]);
  const double inv_n = 1.0 / static_cast<double>(n_);

  // Node i gathers its neighbors' coordinates for every column.
  std::fill(residual_.begin(), residual_.end(), 0.0);
  for (const auto& e : row) {
    const double* xj = x_.data() + e.col * columns_;
    for (std::size_t l = 0; l < columns_; ++l) residual_[l] += e.value * xj[l];
  }
  // q_i^l = (a_i^T x^l - b_i^l) / ||a_i||^2, with b^l = e_l - 1/n.
  const double inv_norm = 1.0 / row_sq_norms_[i];
  for (std::size_t l = 0; l < columns_; ++l) {
    const double b = rhs_scale_[i] * ((l == i ? 1.0 : 0.0) - inv_n);
    residual_[l] = (residual_[l] - b) * inv_norm;
  }
  // ... and sends q_i back; each j in N_i + {i} applies its own update.
  for (const auto& e : row) {
    double* xj = x_.data() + e.col * columns_;
    for (std::size_t l = 0; l < columns_; ++l) xj[l] -= e.value * residual_[l];
  }

  ++events_;
  ++wake_counts_[i];
  comm_ += 2ull * graph_->degree(i) * columns_;
}

Eigen::MatrixXd DrkState::assemble() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd X(n, n);
  for (std::size_t j = 0; j < n_; ++j) {
    double sum = 0.0;
    for (std::size_t l = 0; l < columns_; ++l) {
      const double v = x_[j * columns_ + l];
      X(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) = v;
      sum += v;
    }
    X(static_cast<Eigen::Index>(j), n - 1) = -sum;
  }
  return X;
}

double DrkState::expected_comm_per_event() const {
  double total = 0.0;
  const auto p = sampler_.probabilities();
  for (std::size_t i = 0; i < n_; ++i) {
    total += 2.0 * p[i] * static_cast<double>(graph_->degree(i)) * static_cast<double>(columns_);
  }
  return total;
}

namespace {

double relative_error(const DrkState& state, const Eigen::MatrixXd& reference, double reference_norm) {
  const std::size_t n = state.node_count();
  const std::size_t cols = state.column_count();
  double err = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t l = 0; l < cols; ++l) {
      const double v = state.coordinate(j, l);
      sum += v;
      const double d = v - reference(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
      err += d * d;
    }
    const double d = -sum - reference(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(cols));
    err += d * d;
  }
  return std::sqrt(err) / reference_norm;
}

}  // namespace

DrkRunResult run_drk(const Graph& g, const Eigen::MatrixXd& reference, const DrkOptions& options,
                     std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  if (reference.rows() != n || reference.cols() != n) {
    throw Error(Errc::mismatch, "reference pseudoinverse size does not match the graph");
  }
  if (options.events < 1) throw Error(Errc::invalid_argument, "D-RK run needs at least one event");
  const std::size_t stride = std::max<std::size_t>(options.stride, 1);
  const double reference_norm = reference.norm();

  DrkState state(g, options.variant);
  Rng rng(seed);
  Rng clock(seed ^ 0x9e3779b97f4a7c15ull);
  double total_rate = 0.0;
  for (double r : state.clock_rates()) total_rate += r;
  double now = 0.0;

  DrkRunResult result;
  PathTrace& trace = result.trace;
  auto record = [&](std::size_t k) {
    const double err = relative_error(state, reference, reference_norm);
    trace.events.push_back(k);
    trace.rel_error.push_back(err);
    trace.comm.push_back(static_cast<double>(state.comm_count()));
    if (options.timed) trace.time.push_back(now);
    return err;
  };

  record(0);
  for (std::size_t k = 1; k <= options.events; ++k) {
    const std::size_t i = options.schedule == WakeSchedule::cyclic ? (k - 1) % g.node_count()
                                                                   : state.wake_sampler().sample(rng);
    if (options.timed) now += -std::log1p(-uniform01(clock)) / total_rate;
    state.wake(i);
    if (k % stride == 0 || k == options.events) {
      const double err = record(k);
      if (options.floor > 0.0 && err < options.floor) {
        trace.floor_event = k;
        break;
      }
    }
  }

  trace.events_run = state.event_index();
  result.estimate = state.assemble();
  result.comm_count = state.comm_count();
  result.wake_counts.assign(state.wake_counts().begin(), state.wake_counts().end());
  return result;
}

}  // namespace resistnet
