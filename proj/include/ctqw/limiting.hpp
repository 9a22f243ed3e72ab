#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "ctqw/graph.hpp"
#include "ctqw/spectral.hpp"

namespace ctqw {

// Long-time average chi_{jk} of pi_{jk}(t) for one start node.
struct LimitingDistribution {
  NodeId start;
  Eigen::VectorXd chi;
};

// Closed form of lim_{T->inf} (1/T) int_0^T |alpha_jk(t)|^2 dt.
//
// Writing alpha_jk(t) = sum_n exp(-i gamma lambda_n t) Q_jn Q_kn, the squared
// modulus is a double sum over (n, m) with phases exp(-i gamma (lambda_n -
// lambda_m) t). Their time average is 1 when lambda_n = lambda_m and 0
// otherwise, so only pairs inside one degeneracy group E survive:
//
//   chi_jk = sum_E ( sum_{n in E} Q_jn Q_kn )^2
//
// i.e. the squared entries of the spectral projectors, summed over
// eigenspaces. gamma only rescales time, so it is validated but unused.
Eigen::MatrixXd chi_exact(const SpectralDecomposition& d, const DegeneracyGroups& groups, double gamma = 1.0);

LimitingDistribution chi_profile(const SpectralDecomposition& d, const DegeneracyGroups& groups, NodeId start);

// Brute-force oracle: trapezoidal average of pi_jk(t) over a uniform grid of
// `steps` intervals on [0, horizon]. Requires horizon > 0 and steps >= 1000.
double chi_numeric(const SpectralDecomposition& d, double gamma, NodeId j, NodeId k, double horizon,
                   std::size_t steps);

// Same quadrature for every pair at once, propagating the full matrix.
Eigen::MatrixXd chi_numeric_matrix(const SpectralDecomposition& d, double gamma, double horizon, std::size_t steps);

}  // namespace ctqw
