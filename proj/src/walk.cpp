#include "ctqw/walk.hpp"

#include <cmath>
#include <limits>

#include "ctqw/errors.hpp"

namespace ctqw {

namespace {

constexpr double kRatioFloor = 1e-300;

Eigen::VectorXd decay_factors(const SpectralDecomposition& d, const WalkParams& params) {
  return (-params.gamma * params.time * d.eigenvalues.array()).exp().matrix();
}

Eigen::VectorXcd phase_factors(const SpectralDecomposition& d, const WalkParams& params) {
  Eigen::VectorXcd phases(d.size());
  for (Eigen::Index n = 0; n < d.size(); ++n) {
    phases(n) = std::polar(1.0, -params.gamma * d.eigenvalues(n) * params.time);
  }
  return phases;
}

void check_node(const SpectralDecomposition& d, NodeId node) {
  if (node.value < 1 || node.value > d.size()) {
    throw InvalidNodeError("node id " + std::to_string(node.value) + " outside 1.." + std::to_string(d.size()));
  }
}

}  // namespace

double ratio_or_missing(double pi, double p) {
  return p < kRatioFloor ? std::numeric_limits<double>::quiet_NaN() : pi / p;
}

void validate(const WalkParams& params) {
  if (!(params.gamma > 0.0) || !std::isfinite(params.gamma)) throw DomainError("gamma must be positive and finite");
  if (!std::isfinite(params.time)) throw DomainError("time must be finite");
  if (params.time < 0.0) throw DomainError("time must be non-negative");
}

Eigen::MatrixXd ctrw_matrix(const SpectralDecomposition& d, const WalkParams& params) {
  validate(params);
  const auto& q = d.eigenvectors;
  Eigen::MatrixXd p = q * decay_factors(d, params).asDiagonal() * q.transpose();
  // The product is symmetric up to roundoff; make it exact.
  return 0.5 * (p + p.transpose());
}

Eigen::MatrixXcd ctqw_amplitude_matrix(const SpectralDecomposition& d, const WalkParams& params) {
  validate(params);
  const Eigen::MatrixXcd q = d.eigenvectors.cast<std::complex<double>>();
  Eigen::MatrixXcd alpha = q * phase_factors(d, params).asDiagonal() * q.transpose();
  return 0.5 * (alpha + alpha.transpose());
}

double ctrw_probability(const SpectralDecomposition& d, const WalkParams& params, NodeId j, NodeId k) {
  validate(params);
  check_node(d, j);
  check_node(d, k);
  const auto& q = d.eigenvectors;
  const auto jj = static_cast<Eigen::Index>(j.index());
  const auto kk = static_cast<Eigen::Index>(k.index());
  double p = 0.0;
  for (Eigen::Index n = 0; n < d.size(); ++n) {
    p += std::exp(-params.gamma * d.eigenvalues(n) * params.time) * q(jj, n) * q(kk, n);
  }
  return p;
}

double ctqw_probability(const SpectralDecomposition& d, const WalkParams& params, NodeId j, NodeId k) {
  validate(params);
  check_node(d, j);
  check_node(d, k);
  const auto& q = d.eigenvectors;
  const auto jj = static_cast<Eigen::Index>(j.index());
  const auto kk = static_cast<Eigen::Index>(k.index());
  std::complex<double> alpha = 0.0;
  for (Eigen::Index n = 0; n < d.size(); ++n) {
    alpha += std::polar(q(jj, n) * q(kk, n), -params.gamma * d.eigenvalues(n) * params.time);
  }
  return std::norm(alpha);
}

Eigen::MatrixXd quantum_classical_ratio(const SpectralDecomposition& d, const WalkParams& params) {
  const Eigen::MatrixXd p = ctrw_matrix(d, params);
  const Eigen::MatrixXd pi = ctqw_amplitude_matrix(d, params).cwiseAbs2();
  Eigen::MatrixXd ratio(p.rows(), p.cols());
  for (Eigen::Index k = 0; k < p.cols(); ++k) {
    for (Eigen::Index j = 0; j < p.rows(); ++j) {
      ratio(j, k) = ratio_or_missing(pi(j, k), p(j, k));
    }
  }
  return ratio;
}

WalkDistribution walk_distribution(const SpectralDecomposition& d, const WalkParams& params, NodeId start) {
  validate(params);
  check_node(d, start);
  const auto& q = d.eigenvectors;
  const Eigen::VectorXd row = q.row(static_cast<Eigen::Index>(start.index())).transpose();

  WalkDistribution out;
  out.start = start;
  out.time = params.time;
  out.classical = q * decay_factors(d, params).cwiseProduct(row);
  out.quantum_amplitude = q.cast<std::complex<double>>() * phase_factors(d, params).cwiseProduct(row.cast<std::complex<double>>());
  out.quantum = out.quantum_amplitude.cwiseAbs2();
  return out;
}

}  // namespace ctqw
