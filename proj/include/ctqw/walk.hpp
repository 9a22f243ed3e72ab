#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ctqw/graph.hpp"
#include "ctqw/spectral.hpp"

namespace ctqw {

// Uniform bond rate gamma and evaluation time t (units of 1/gamma when gamma = 1).
struct WalkParams {
  double gamma = 1.0;
  double time = 0.0;
};

// Column k of the classical and quantum propagators at one time.
struct WalkDistribution {
  NodeId start;
  double time = 0.0;
  Eigen::VectorXd classical;
  Eigen::VectorXcd quantum_amplitude;
  Eigen::VectorXd quantum;
};

// All propagators below evaluate through the spectral form
//   sum_n f(gamma * lambda_n * t) Q_jn Q_kn
// so a single decomposition serves every gamma and t. Negative t or
// non-positive gamma throw DomainError.

// p_jk(t) = <j| exp(-gamma A t) |k>
Eigen::MatrixXd ctrw_matrix(const SpectralDecomposition& d, const WalkParams& params);

// Single entry p_jk(t), in O(N).
double ctrw_probability(const SpectralDecomposition& d, const WalkParams& params, NodeId j, NodeId k);

// alpha_jk(t) = <j| exp(-i gamma A t) |k>
Eigen::MatrixXcd ctqw_amplitude_matrix(const SpectralDecomposition& d, const WalkParams& params);

// pi_jk(t) = |alpha_jk(t)|^2 for a single pair, in O(N).
double ctqw_probability(const SpectralDecomposition& d, const WalkParams& params, NodeId j, NodeId k);

// Elementwise pi_jk / p_jk. Entries with p_jk < 1e-300 are missing and
// reported as quiet NaN; test with is_missing().
Eigen::MatrixXd quantum_classical_ratio(const SpectralDecomposition& d, const WalkParams& params);

WalkDistribution walk_distribution(const SpectralDecomposition& d, const WalkParams& params, NodeId start);

// pi / p, or the missing marker when p < 1e-300.
double ratio_or_missing(double pi, double p);

inline bool is_missing(double ratio) { return ratio != ratio; }

void validate(const WalkParams& params);

}  // namespace ctqw
