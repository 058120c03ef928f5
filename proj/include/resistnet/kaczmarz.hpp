#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "resistnet/graph.hpp"
#include "resistnet/sampling.hpp"

namespace resistnet {

/// Sparse linear system A x = b given row by row, with a sampling
/// distribution over rows. The system must be consistent; that is the
/// caller's responsibility.
class RowSystem {
 public:
  /// Uniform sampling when `probabilities` is empty.
  RowSystem(std::size_t cols, std::vector<std::vector<RowEntry>> rows, std::vector<double> rhs,
            std::vector<double> probabilities = {});

  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t col_count() const noexcept { return cols_; }
  std::span<const RowEntry> row(std::size_t i) const { return rows_[i]; }
  double rhs(std::size_t i) const { return rhs_[i]; }
  double row_sq_norm(std::size_t i) const { return sq_norms_[i]; }
  const DiscreteSampler& sampler() const noexcept { return sampler_; }

  double row_dot(std::size_t i, std::span<const double> x) const;
  /// max_i |a_i^T x - b_i|
  double residual_inf(std::span<const double> x) const;

 private:
  std::size_t cols_;
  std::vector<std::vector<RowEntry>> rows_;
  std::vector<double> rhs_;
  std::vector<double> sq_norms_;
  DiscreteSampler sampler_;
};

/// Laplacian system L x = e_l - (1/n) 1 whose minimum-norm solution is
/// column l (0-based) of the pseudoinverse.
///
/// `normalized` scales row i by 1/sqrt(s_i). Sampling is norm-proportional
/// for the plain system and uniform for the normalized one unless
/// `probabilities` overrides it.
RowSystem laplacian_column_system(const LaplacianView& lap, std::size_t column, bool normalized = false,
                                  std::vector<double> probabilities = {});

/// Projects x onto {z : a_i^T z = b_i} in place. Touches only the support of a_i.
void rk_step(std::span<double> x, const RowSystem& sys, std::size_t i);

struct StopCriteria {
  std::size_t max_steps = 1'000'000;
  double tolerance = 1e-10;     // on the infinity-norm residual
  std::size_t check_every = 1;  // residual evaluation interval, in steps
};

struct SolveResult {
  std::vector<double> x;
  std::size_t steps = 0;
  bool converged = false;
  std::vector<double> residual_history;  // one entry per residual check, first at step 0
};

enum class RowOrder { randomized, cyclic };

/// Step-at-a-time Kaczmarz iteration from x = 0. Exposes the iterate so
/// callers can measure error against a known solution between steps.
class KaczmarzIteration {
 public:
  KaczmarzIteration(const RowSystem& sys, RowOrder order, std::uint64_t seed = 0);

  /// Picks the next row and projects onto it; returns the row used.
  std::size_t step();

  std::span<const double> x() const noexcept { return x_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  const RowSystem* sys_;
  RowOrder order_;
  Rng rng_;
  std::vector<double> x_;
  std::size_t steps_ = 0;
};

SolveResult rk_solve(const RowSystem& sys, std::uint64_t seed, const StopCriteria& stop = {});
SolveResult cyclic_solve(const RowSystem& sys, const StopCriteria& stop = {});

}  // namespace resistnet
