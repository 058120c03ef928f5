#include "resistnet/spectral.hpp"

#include <cmath>
#include <string>

#include "resistnet/error.hpp"

namespace resistnet {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolve(const Eigen::MatrixXd& m, bool vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, vectors ? Eigen::ComputeEigenvectors
                                                                   : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::eigensolver, "symmetric eigensolver did not converge (n = " +
                                       std::to_string(m.rows()) + ")");
  }
  return solver;
}

double zero_threshold(const Eigen::VectorXd& eigenvalues) {
  return kZeroEigenTolerance * eigenvalues.cwiseAbs().maxCoeff();
}

void require_nontrivial(const Graph& g) {
  if (g.node_count() < 2) throw Error(Errc::invalid_argument, "spectral quantities need n >= 2");
}

}  // namespace

double lambda_min_plus(const Eigen::MatrixXd& symmetric) {
  const auto solver = eigensolve(symmetric, false);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double zero = zero_threshold(ev);
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > zero) return ev(k);
  }
  throw Error(Errc::eigensolver, "matrix has no positive eigenvalue");
}

SpectralData spectral(const Graph& g) {
  require_nontrivial(g);
  const Eigen::MatrixXd L = LaplacianView(g).dense();
  const auto solver = eigensolve(L, true);

  SpectralData sd;
  sd.eigenvalues = solver.eigenvalues();
  sd.eigenvectors = solver.eigenvectors();
  const double zero = zero_threshold(sd.eigenvalues);

  const auto n = L.rows();
  sd.pseudoinverse = Eigen::MatrixXd::Zero(n, n);
  bool found = false;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = sd.eigenvalues(k);
    if (std::abs(lambda) <= zero) continue;
    if (!found) {
      sd.lambda_min_plus = lambda;
      found = true;
    }
    const auto u = sd.eigenvectors.col(k);
    sd.pseudoinverse.noalias() += (1.0 / lambda) * u * u.transpose();
  }
  if (!found) throw Error(Errc::eigensolver, "Laplacian has no positive eigenvalue");
  // Symmetrize away rank-one rounding asymmetry.
  sd.pseudoinverse = 0.5 * (sd.pseudoinverse + sd.pseudoinverse.transpose()).eval();
  return sd;
}

ResistanceTable resistances_from_pseudoinverse(const Eigen::MatrixXd& pinv, const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  if (pinv.rows() != n || pinv.cols() != n) {
    throw Error(Errc::mismatch, "pseudoinverse size does not match the graph");
  }
  ResistanceTable table;
  table.pairs = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = pinv(i, i) + pinv(j, j) - 2.0 * pinv(i, j);
      table.pairs(i, j) = r;
      table.pairs(j, i) = r;
    }
  }
  table.incident_sum.assign(g.node_count(), 0.0);
  for (const auto& e : g.edges()) {
    const double r = table.pairs(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v));
    table.incident_sum[e.u] += r;
    table.incident_sum[e.v] += r;
    table.edge_total += r;
  }
  return table;
}

ResistanceTable effective_resistances(const SpectralData& sd, const Graph& g) {
  return resistances_from_pseudoinverse(sd.pseudoinverse, g);
}

std::vector<double> norm_proportional_probabilities(const LaplacianView& lap) {
  std::vector<double> p(lap.size());
  for (std::size_t i = 0; i < lap.size(); ++i) p[i] = lap.row_sq_norm(i) / lap.frobenius_sq();
  return p;
}

double rate_rho(const Graph& g, std::span<const double> row_probabilities) {
  require_nontrivial(g);
  const LaplacianView lap(g);
  if (row_probabilities.size() != lap.size()) {
    throw Error(Errc::invalid_argument, "probability vector length differs from node count");
  }
  double total = 0.0;
  for (double p : row_probabilities) {
    if (!(p > 0.0) || !std::isfinite(p)) throw Error(Errc::invalid_argument, "probabilities must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(Errc::invalid_argument, "probabilities must sum to 1");

  const Eigen::MatrixXd L = lap.dense();
  Eigen::VectorXd h(L.rows());
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    h(i) = row_probabilities[static_cast<std::size_t>(i)] / lap.row_sq_norm(static_cast<std::size_t>(i));
  }
  const Eigen::MatrixXd M = L.transpose() * h.asDiagonal() * L;
  return 1.0 - lambda_min_plus(0.5 * (M + M.transpose()));
}

double rate_rho_standard(const Graph& g) {
  return rate_rho(g, norm_proportional_probabilities(LaplacianView(g)));
}

namespace {

double normalized_lhs(const Graph& g, const LaplacianView& lap, const Eigen::MatrixXd& L) {
  Eigen::VectorXd s_inv(L.rows());
  for (Eigen::Index i = 0; i < L.rows(); ++i) s_inv(i) = 1.0 / lap.row_sq_norm(static_cast<std::size_t>(i));
  const Eigen::MatrixXd M = L * s_inv.asDiagonal() * L;
  return lambda_min_plus(0.5 * (M + M.transpose())) / static_cast<double>(g.node_count());
}

}  // namespace

double rate_rho_normalized(const Graph& g) {
  require_nontrivial(g);
  const LaplacianView lap(g);
  return 1.0 - normalized_lhs(g, lap, lap.dense());
}

ConjectureCheck check_conjecture(const Graph& g) {
  require_nontrivial(g);
  const LaplacianView lap(g);
  const Eigen::MatrixXd L = lap.dense();
  ConjectureCheck c;
  c.lhs = normalized_lhs(g, lap, L);
  const double lambda = lambda_min_plus(L);
  c.rhs = lambda * lambda / lap.frobenius_sq();
  c.holds = c.lhs >= c.rhs - kConjectureSlack;
  return c;
}

}  // namespace resistnet
