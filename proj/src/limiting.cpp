#include "ctqw/limiting.hpp"

#include <cmath>
#include <complex>

#include "ctqw/errors.hpp"
#include "ctqw/walk.hpp"

namespace ctqw {

namespace {

void check_quadrature(double gamma, double horizon, std::size_t steps) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive and finite");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ContractError("horizon must be positive");
  if (steps < 1000) throw ContractError("quadrature needs at least 1000 steps");
}

double trapezoid_weight(std::size_t i, std::size_t steps) { return (i == 0 || i == steps) ? 0.5 : 1.0; }

}  // namespace

Eigen::MatrixXd chi_exact(const SpectralDecomposition& d, const DegeneracyGroups& groups, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive and finite");
  const Eigen::Index n = d.size();
  Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(n, n);
  for (const auto& group : groups.groups) {
    Eigen::MatrixXd basis(n, static_cast<Eigen::Index>(group.size()));
    for (std::size_t c = 0; c < group.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = d.eigenvectors.col(group[c]);
    const Eigen::MatrixXd projector = basis * basis.transpose();
    chi += projector.cwiseAbs2();
  }
  return 0.5 * (chi + chi.transpose());
}

LimitingDistribution chi_profile(const SpectralDecomposition& d, const DegeneracyGroups& groups, NodeId start) {
  if (start.value < 1 || start.value > d.size()) {
    throw InvalidNodeError("start node " + std::to_string(start.value) + " outside 1.." + std::to_string(d.size()));
  }
  return {start, chi_exact(d, groups).col(static_cast<Eigen::Index>(start.index()))};
}

double chi_numeric(const SpectralDecomposition& d, double gamma, NodeId j, NodeId k, double horizon,
                   std::size_t steps) {
  check_quadrature(gamma, horizon, steps);
  const double h = horizon / static_cast<double>(steps);
  double sum = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const WalkParams params{gamma, h * static_cast<double>(i)};
    sum += trapezoid_weight(i, steps) * ctqw_probability(d, params, j, k);
  }
  return sum / static_cast<double>(steps);
}

Eigen::MatrixXd chi_numeric_matrix(const SpectralDecomposition& d, double gamma, double horizon, std::size_t steps) {
  check_quadrature(gamma, horizon, steps);
  const Eigen::Index n = d.size();
  const auto& q = d.eigenvectors;
  const double h = horizon / static_cast<double>(steps);

  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd cosines(n);
  Eigen::VectorXd sines(n);
  Eigen::MatrixXd re(n, n);
  Eigen::MatrixXd im(n, n);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = h * static_cast<double>(i);
    for (Eigen::Index m = 0; m < n; ++m) {
      const double phase = gamma * d.eigenvalues(m) * t;
      cosines(m) = std::cos(phase);
      sines(m) = std::sin(phase);
    }
    re.noalias() = q * cosines.asDiagonal() * q.transpose();
    im.noalias() = q * sines.asDiagonal() * q.transpose();
    sum += trapezoid_weight(i, steps) * (re.cwiseAbs2() + im.cwiseAbs2());
  }
  return sum / static_cast<double>(steps);
}

}  // namespace ctqw
