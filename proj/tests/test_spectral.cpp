#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ctqw/errors.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/spectral.hpp"

using namespace ctqw;

namespace {

Eigen::MatrixXd random_symmetric(std::mt19937& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = u(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("2x2 single edge") {
  Eigen::MatrixXd a(2, 2);
  a << 1, -1, -1, 1;
  const auto d = decompose_symmetric(a);
  CHECK(std::abs(d.eigenvalues(0)) < 1e-15);
  CHECK(d.eigenvalues(1) == doctest::Approx(2.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(d.eigenvectors(0, 0) == doctest::Approx(r));
  CHECK(d.eigenvectors(1, 0) == doctest::Approx(r));
  CHECK(d.eigenvectors(0, 1) == doctest::Approx(r));
  CHECK(d.eigenvectors(1, 1) == doctest::Approx(-r));
}

TEST_CASE("identity keeps the canonical basis") {
  const auto d = decompose_symmetric(Eigen::MatrixXd::Identity(6, 6));
  CHECK(d.eigenvalues == Eigen::VectorXd::Ones(6));
  CHECK(d.eigenvectors == Eigen::MatrixXd::Identity(6, 6));
  CHECK(group_degenerate(d).groups.size() == 1);
}

TEST_CASE("1x1") {
  Eigen::MatrixXd a(1, 1);
  a << -3.5;
  const auto d = decompose_symmetric(a);
  CHECK(d.eigenvalues(0) == -3.5);
  CHECK(d.eigenvectors(0, 0) == 1.0);
}

TEST_CASE("G=2 glued tree spectrum") {
  const auto a = adjacency_matrix(build_glued_tree({2}));
  const auto d = decompose_symmetric(a);
  const double s17 = std::sqrt(17.0);
  const std::vector<double> expected{0, (5 - s17) / 2, 1, 2, 2, 2, 3, 4, (5 + s17) / 2, 5};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(std::abs(d.eigenvalues(static_cast<Eigen::Index>(i)) - expected[i]) < 1e-12);
  }
  for (Eigen::Index i = 1; i < d.size(); ++i) CHECK(d.eigenvalues(i) > 1e-10);

  const auto groups = group_degenerate(d);
  CHECK(groups.groups.size() == 8);
  CHECK(groups.groups[3] == std::vector<Eigen::Index>{3, 4, 5});
  CHECK(groups.values[3] == doctest::Approx(2.0));
}

TEST_CASE("sign convention: largest entry positive, lowest index on ties") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = decompose_symmetric(random_symmetric(rng, 12));
    for (Eigen::Index c = 0; c < d.size(); ++c) {
      Eigen::Index arg = 0;
      d.eigenvectors.col(c).cwiseAbs().maxCoeff(&arg);
      CHECK(d.eigenvectors(arg, c) > 0.0);
    }
  }
  const auto tree = decompose_symmetric(adjacency_matrix(build_glued_tree({1})));
  // Constant vector (1,1,1,1)/2 has four tied entries; all positive.
  CHECK(tree.eigenvectors.col(0).minCoeff() > 0.0);
}

TEST_CASE("residuals on glued trees G <= 5") {
  for (int G = 1; G <= 5; ++G) {
    const auto a = adjacency_matrix(build_glued_tree({G}));
    const auto d = decompose_symmetric(a);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    CHECK(orthogonality_residual(d) <= 1e-10);
    CHECK(reconstruction_residual(d, a) <= 1e-10 * scale);
    CHECK(std::abs(d.eigenvalues(0)) <= 1e-10);
    CHECK(d.eigenvalues(1) > 1e-10);  // connected: exactly one zero
    CHECK(d.eigenvalues.minCoeff() >= -1e-10);
    const double trace = a.trace();
    CHECK(std::abs(d.eigenvalues.sum() - trace) <= 1e-9 * trace);
    CHECK(trace == 2.0 * static_cast<double>(build_glued_tree({G}).edges().size()));
  }
}

TEST_CASE("random symmetric matrices agree with a reference solver") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = std::uniform_int_distribution<Eigen::Index>(1, 50)(rng);
    const auto m = random_symmetric(rng, n);
    const auto d = decompose_symmetric(m);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    CHECK(orthogonality_residual(d) <= 1e-10);
    CHECK(reconstruction_residual(d, m) <= 1e-10 * scale);
    for (Eigen::Index i = 1; i < n; ++i) CHECK(d.eigenvalues(i - 1) <= d.eigenvalues(i));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reference(m);
    CHECK((reference.eigenvalues() - d.eigenvalues).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  }
}

TEST_CASE("decomposition is deterministic") {
  std::mt19937 rng(99);
  const auto m = random_symmetric(rng, 30);
  const auto d1 = decompose_symmetric(m);
  const auto d2 = decompose_symmetric(m);
  CHECK(d1.eigenvalues == d2.eigenvalues);
  CHECK(d1.eigenvectors == d2.eigenvectors);
}

TEST_CASE("contract violations") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 2.0000001, 1;
  CHECK_THROWS_AS(decompose_symmetric(a), ContractError);
  CHECK_THROWS_AS(decompose_symmetric(Eigen::MatrixXd(2, 3)), ContractError);
  CHECK_THROWS_AS(decompose_symmetric(Eigen::MatrixXd(0, 0)), ContractError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(decompose_symmetric(bad), ContractError);
}

TEST_CASE("degeneracy grouping") {
  SpectralDecomposition d;
  d.eigenvalues = Eigen::Vector2d(0.0, 2.0);
  d.eigenvectors = Eigen::MatrixXd::Identity(2, 2);
  auto g = group_degenerate(d, 1e-8);
  CHECK(g.groups.size() == 2);

  d.eigenvalues = Eigen::VectorXd::Constant(2, 3.0);
  CHECK(group_degenerate(d).groups.size() == 1);

  // Single linkage chains neighbours closer than the tolerance.
  d.eigenvalues = Eigen::Vector4d(0.0, 0.6e-8, 1.2e-8, 1.0);
  d.eigenvectors = Eigen::MatrixXd::Identity(4, 4);
  g = group_degenerate(d, 1e-8);
  CHECK(g.groups.size() == 2);
  CHECK(g.groups[0].size() == 3);

  d.eigenvalues = Eigen::Vector4d(0.0, 1.0, 2.0, 300.0);
  CHECK(default_degeneracy_tolerance(d) == doctest::Approx(3e-6));
  CHECK_THROWS_AS(group_degenerate(d, 0.0), ContractError);
}

TEST_CASE("groups cover every index once") {
  for (int G = 1; G <= 5; ++G) {
    const auto d = decompose_symmetric(adjacency_matrix(build_glued_tree({G})));
    const auto g = group_degenerate(d);
    std::vector<int> seen(static_cast<std::size_t>(d.size()), 0);
    for (std::size_t k = 0; k < g.groups.size(); ++k) {
      for (auto i : g.groups[k]) ++seen[static_cast<std::size_t>(i)];
      if (k > 0) CHECK(g.values[k] - g.values[k - 1] > g.tolerance);
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}
