#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace ctqw {

// A = Q diag(eigenvalues) Q^T with orthonormal columns in Q. Eigenvalues are
// ascending; each eigenvector is signed so that its largest-magnitude entry
// (lowest index on ties) is positive.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Eigen::Index size() const { return eigenvalues.size(); }
};

// Partition of the eigenvalue indices into runs of numerically equal values.
struct DegeneracyGroups {
  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<double> values;  // mean eigenvalue of each group
  double tolerance = 0.0;
};

// Cyclic Jacobi. Throws ContractError unless `m` is square, finite and exactly
// symmetric; NumericalError if the sweep cap is hit.
SpectralDecomposition decompose_symmetric(const Eigen::MatrixXd& m);

// 1e-8 * max(1, |largest eigenvalue|)
double default_degeneracy_tolerance(const SpectralDecomposition& d);

// Single-linkage grouping of the sorted spectrum: neighbours whose gap is at
// most `tol` share a group.
DegeneracyGroups group_degenerate(const SpectralDecomposition& d, std::optional<double> tol = std::nullopt);

// max |Q^T Q - I|
double orthogonality_residual(const SpectralDecomposition& d);
// max |A - Q diag(lambda) Q^T|
double reconstruction_residual(const SpectralDecomposition& d, const Eigen::MatrixXd& a);

}  // namespace ctqw
