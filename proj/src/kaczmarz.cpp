#include "resistnet/kaczmarz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "resistnet/error.hpp"

namespace resistnet {

RowSystem::RowSystem(std::size_t cols, std::vector<std::vector<RowEntry>> rows, std::vector<double> rhs,
                     std::vector<double> probabilities)
    : cols_(cols), rows_(std::move(rows)), rhs_(std::move(rhs)) {
  if (rows_.empty()) throw Error(Errc::invalid_argument, "row system has no rows");
  if (rhs_.size() != rows_.size()) throw Error(Errc::invalid_argument, "rhs length differs from row count");
  sq_norms_.reserve(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    double sq = 0.0;
    for (const auto& e : rows_[i]) {
      if (e.col >= cols_) throw Error(Errc::out_of_range, "row " + std::to_string(i) + " has a column out of range");
      sq += e.value * e.value;
    }
    if (!(sq > 0.0)) throw Error(Errc::invalid_argument, "row " + std::to_string(i) + " is all zeros");
    sq_norms_.push_back(sq);
  }
  if (probabilities.empty()) probabilities.assign(rows_.size(), 1.0);
  if (probabilities.size() != rows_.size()) {
    throw Error(Errc::invalid_argument, "probability vector length differs from row count");
  }
  sampler_ = DiscreteSampler(probabilities);
}

double RowSystem::row_dot(std::size_t i, std::span<const double> x) const {
  double dot = 0.0;
  for (const auto& e : rows_[i]) dot += e.value * x[e.col];
  return dot;
}

double RowSystem::residual_inf(std::span<const double> x) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) worst = std::max(worst, std::abs(row_dot(i, x) - rhs_[i]));
  return worst;
}

RowSystem laplacian_column_system(const LaplacianView& lap, std::size_t column, bool normalized,
                                  std::vector<double> probabilities) {
  const std::size_t n = lap.size();
  if (column >= n) throw Error(Errc::out_of_range, "column index outside the graph");
  std::vector<std::vector<RowEntry>> rows(n);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = normalized ? 1.0 / std::sqrt(lap.row_sq_norm(i)) : 1.0;
    const auto r = lap.row(i);
    rows[i].reserve(r.size());
    for (const auto& e : r) rows[i].push_back({e.col, scale * e.value});
    rhs[i] = scale * ((i == column ? 1.0 : 0.0) - 1.0 / static_cast<double>(n));
  }
  if (probabilities.empty()) {
    if (normalized) {
      probabilities.assign(n, 1.0);
    } else {
      probabilities.assign(lap.row_sq_norms().begin(), lap.row_sq_norms().end());
    }
  }
  return RowSystem(n, std::move(rows), std::move(rhs), std::move(probabilities));
}

void rk_step(std::span<double> x, const RowSystem& sys, std::size_t i) {
  const double scale = (sys.row_dot(i, x) - sys.rhs(i)) / sys.row_sq_norm(i);
  for (const auto& e : sys.row(i)) x[e.col] -= scale * e.value;
}

KaczmarzIteration::KaczmarzIteration(const RowSystem& sys, RowOrder order, std::uint64_t seed)
    : sys_(&sys), order_(order), rng_(seed), x_(sys.col_count(), 0.0) {}

std::size_t KaczmarzIteration::step() {
  const std::size_t i =
      order_ == RowOrder::cyclic ? steps_ % sys_->row_count() : sys_->sampler().sample(rng_);
  rk_step(x_, *sys_, i);
  ++steps_;
  return i;
}

namespace {

SolveResult solve(const RowSystem& sys, RowOrder order, std::uint64_t seed, const StopCriteria& stop) {
  KaczmarzIteration it(sys, order, seed);
  const std::size_t every = std::max<std::size_t>(stop.check_every, 1);
  SolveResult result;
  double residual = sys.residual_inf(it.x());
  result.residual_history.push_back(residual);
  while (residual > stop.tolerance && it.steps() < stop.max_steps) {
    it.step();
    if (it.steps() % every == 0 || it.steps() == stop.max_steps) {
      residual = sys.residual_inf(it.x());
      result.residual_history.push_back(residual);
    }
  }
  result.converged = residual <= stop.tolerance;
  result.steps = it.steps();
  result.x.assign(it.x().begin(), it.x().end());
  return result;
}

}  // namespace

SolveResult rk_solve(const RowSystem& sys, std::uint64_t seed, const StopCriteria& stop) {
  return solve(sys, RowOrder::randomized, seed, stop);
}

SolveResult cyclic_solve(const RowSystem& sys, const StopCriteria& stop) {
  return solve(sys, RowOrder::cyclic, 0, stop);
}

}  // namespace resistnet
