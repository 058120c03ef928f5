#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "resistnet/graph.hpp"

namespace resistnet {

/// Dense eigendecomposition of a graph Laplacian and the pseudoinverse built
/// from it. This is the centralized reference every iterative method is
/// checked against.
struct SpectralData {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // column k pairs with eigenvalues(k)
  Eigen::MatrixXd pseudoinverse;
  double lambda_min_plus = 0.0;
};

/// Eigenvalues with |lambda| <= kZeroEigenTolerance * lambda_max count as zero.
inline constexpr double kZeroEigenTolerance = 1e-9;

SpectralData spectral(const Graph& g);

/// Effective resistances R_ij = L+_ii + L+_jj - 2 L+_ij for all pairs.
struct ResistanceTable {
  Eigen::MatrixXd pairs;             // symmetric, zero diagonal
  std::vector<double> incident_sum;  // per node, sum over incident edges
  double edge_total = 0.0;           // sum over edges of R_ij

  double operator()(std::size_t i, std::size_t j) const { return pairs(i, j); }
};

ResistanceTable effective_resistances(const SpectralData& sd, const Graph& g);

/// Same identity applied to any estimate of the pseudoinverse, e.g. the
/// assembled output of a decentralized run.
ResistanceTable resistances_from_pseudoinverse(const Eigen::MatrixXd& pinv, const Graph& g);

/// Smallest eigenvalue of a symmetric PSD matrix above the zero tolerance.
double lambda_min_plus(const Eigen::MatrixXd& symmetric);

/// 1 - lambda+_min(L^T H L) with H = diag(p_i / s_i): the expected
/// contraction factor of randomized Kaczmarz on the Laplacian rows sampled
/// with probabilities p.
double rate_rho(const Graph& g, std::span<const double> row_probabilities);

/// Row probabilities proportional to squared row norms, p_i = s_i / ||L||_F^2.
std::vector<double> norm_proportional_probabilities(const LaplacianView& lap);

/// rate_rho at norm-proportional sampling, 1 - (lambda+_min(L) / ||L||_F)^2.
double rate_rho_standard(const Graph& g);

/// 1 - lambda+_min(L S^-1 L) / n: rate on the row-normalized system with
/// uniform node sampling.
double rate_rho_normalized(const Graph& g);

struct ConjectureCheck {
  bool holds = false;
  double lhs = 0.0;  // lambda+_min(L S^-1 L) / n
  double rhs = 0.0;  // (lambda+_min(L) / ||L||_F)^2
};

inline constexpr double kConjectureSlack = 1e-12;

ConjectureCheck check_conjecture(const Graph& g);

}  // namespace resistnet
