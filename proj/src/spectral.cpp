#include "ctqw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ctqw/errors.hpp"

namespace ctqw {

namespace {

constexpr int kMaxSweeps = 100;

void validate_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw ContractError("matrix must be square and non-empty");
  if (!m.allFinite()) throw ContractError("matrix has non-finite entries");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) throw ContractError("matrix is not symmetric");
    }
  }
}

double off_diagonal_norm_sq(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) sum += a(i, j) * a(i, j);
  }
  return 2.0 * sum;
}

// Zeroes a(p,q) with the rotation in Rutishauser's form and accumulates it into v.
void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = akp - s * (akq + tau * akp);
    a(k, q) = a(q, k) = akq + s * (akp - tau * akq);
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = vkp - s * (vkq + tau * vkp);
    v(k, q) = vkq + s * (vkp - tau * vkq);
  }
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> column) {
  const double largest = column.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    // Entries within roundoff of the maximum count as ties.
    if (std::abs(column(i)) >= largest * (1.0 - 1e-10)) {
      if (column(i) < 0.0) column = -column;
      return;
    }
  }
}

}  // namespace

SpectralDecomposition decompose_symmetric(const Eigen::MatrixXd& m) {
  validate_symmetric(m);
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd a = m;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  const double target = std::numeric_limits<double>::epsilon() * 1e-2 * scale;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (std::sqrt(off_diagonal_norm_sq(a)) <= target) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        const double g = 100.0 * apq;
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }
  if (!converged && std::sqrt(off_diagonal_norm_sq(a)) > target) {
    throw NumericalError("Jacobi eigensolver did not converge");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  SpectralDecomposition d;
  d.eigenvalues.resize(n);
  d.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto src = order[static_cast<std::size_t>(i)];
    d.eigenvalues(i) = a(src, src);
    d.eigenvectors.col(i) = v.col(src);
    fix_sign(d.eigenvectors.col(i));
  }
  return d;
}

double default_degeneracy_tolerance(const SpectralDecomposition& d) {
  const double top = d.size() > 0 ? std::abs(d.eigenvalues(d.size() - 1)) : 0.0;
  return 1e-8 * std::max(1.0, top);
}

DegeneracyGroups group_degenerate(const SpectralDecomposition& d, std::optional<double> tol) {
  DegeneracyGroups out;
  out.tolerance = tol.value_or(default_degeneracy_tolerance(d));
  if (!(out.tolerance > 0.0)) throw ContractError("degeneracy tolerance must be positive");

  const auto& lambda = d.eigenvalues;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (i == 0 || lambda(i) - lambda(i - 1) > out.tolerance) out.groups.emplace_back();
    out.groups.back().push_back(i);
  }
  for (const auto& group : out.groups) {
    double sum = 0.0;
    for (auto i : group) sum += lambda(i);
    out.values.push_back(sum / static_cast<double>(group.size()));
  }
  return out;
}

double orthogonality_residual(const SpectralDecomposition& d) {
  const auto& q = d.eigenvectors;
  return (q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

double reconstruction_residual(const SpectralDecomposition& d, const Eigen::MatrixXd& a) {
  const auto& q = d.eigenvectors;
  return (a - q * d.eigenvalues.asDiagonal() * q.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace ctqw
