#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "ctqw/errors.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/limiting.hpp"
#include "ctqw/spectral.hpp"
#include "ctqw/walk.hpp"

using namespace ctqw;

namespace {

struct Tree {
  SpectralDecomposition d;
  DegeneracyGroups groups;
};

Tree tree(int G) {
  auto d = decompose_symmetric(adjacency_matrix(build_glued_tree({G})));
  auto groups = group_degenerate(d);
  return {std::move(d), std::move(groups)};
}

double at(const Eigen::MatrixXd& m, int j, int k) { return m(j - 1, k - 1); }

}  // namespace

TEST_CASE("reference limiting values on G=2") {
  const auto t = tree(2);
  const auto chi = chi_exact(t.d, t.groups);
  CHECK(std::abs(at(chi, 10, 1) - 0.2644) <= 5e-4);
  CHECK(std::abs(at(chi, 7, 4) - 0.0545) <= 5e-4);
  CHECK(at(chi, 7, 4) < 0.1);
  CHECK(at(chi, 10, 1) > 0.1);
}

TEST_CASE("tiny graphs") {
  const auto one = decompose_symmetric(adjacency_matrix(Graph(1, {})));
  CHECK(chi_exact(one, group_degenerate(one))(0, 0) == doctest::Approx(1.0));

  const auto two = decompose_symmetric(adjacency_matrix(Graph(2, {{NodeId{1}, NodeId{2}}})));
  const auto chi = chi_exact(two, group_degenerate(two));
  for (Eigen::Index j = 0; j < 2; ++j) {
    for (Eigen::Index k = 0; k < 2; ++k) CHECK(chi(j, k) == doctest::Approx(0.5).epsilon(1e-12));
  }
  const double avg = chi_numeric(two, 1.0, NodeId{1}, NodeId{1}, 1000.0, 100000);
  CHECK(std::abs(avg - 0.5) <= 1e-2);
}

TEST_CASE("quadrature oracle matches the closed form") {
  const auto t = tree(2);
  const auto chi = chi_exact(t.d, t.groups);
  const double numeric = chi_numeric(t.d, 1.0, NodeId{10}, NodeId{1}, 2000.0, 200000);
  CHECK(std::abs(numeric - at(chi, 10, 1)) <= 1e-2);
  CHECK(numeric >= 0.0);
  CHECK(numeric <= 1.0);

  for (int G : {1, 2}) {
    const auto tg = tree(G);
    const auto exact = chi_exact(tg.d, tg.groups);
    const auto all = chi_numeric_matrix(tg.d, 1.0, 2000.0, 200000);
    CHECK((all - exact).cwiseAbs().maxCoeff() <= 1e-2);
    CHECK(all.minCoeff() >= 0.0);
    CHECK(all.maxCoeff() <= 1.0);
  }
}

TEST_CASE("matrix and single-pair quadrature agree") {
  const auto t = tree(2);
  const auto all = chi_numeric_matrix(t.d, 0.5, 300.0, 5000);
  CHECK(all(6, 3) == doctest::Approx(chi_numeric(t.d, 0.5, NodeId{7}, NodeId{4}, 300.0, 5000)).epsilon(1e-10));
  CHECK(all(0, 0) == doctest::Approx(chi_numeric(t.d, 0.5, NodeId{1}, NodeId{1}, 300.0, 5000)).epsilon(1e-10));
}

TEST_CASE("doubly stochastic and symmetric") {
  for (int G = 1; G <= 5; ++G) {
    const auto t = tree(G);
    const auto chi = chi_exact(t.d, t.groups);
    CHECK((chi.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-10);
    CHECK((chi.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-10);
    CHECK(chi == chi.transpose());
    CHECK(chi.minCoeff() >= 0.0);
    CHECK(chi.maxCoeff() <= 1.0);
  }
}

TEST_CASE("gamma only rescales time") {
  const auto t = tree(3);
  const auto reference = chi_exact(t.d, t.groups, 1.0);
  CHECK(chi_exact(t.d, t.groups, 0.5) == reference);
  CHECK(chi_exact(t.d, t.groups, 2.0) == reference);
}

TEST_CASE("profiles on G=3") {
  const auto t = tree(3);
  const auto top = chi_profile(t.d, t.groups, NodeId{1});
  CHECK(top.start == NodeId{1});
  std::vector<int> order(22);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return top.chi(a - 1) > top.chi(b - 1); });
  CHECK(std::set<int>{order[0], order[1]} == std::set<int>{1, 22});
  CHECK(top.chi.sum() == doctest::Approx(1.0).epsilon(1e-12));

  const auto left = chi_profile(t.d, t.groups, NodeId{8});
  // Sibling leaves 8 and 9 tie exactly for the maximum.
  CHECK(left.chi(7) >= left.chi.maxCoeff() - 1e-12);
  CHECK(std::abs(left.chi(8) - left.chi(7)) <= 1e-12);
  CHECK(left.chi(7) > 0.29);
  CHECK(left.chi.sum() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(chi_profile(t.d, t.groups, NodeId{23}), InvalidNodeError);
}

TEST_CASE("classical limit is uniform whatever the start") {
  for (int G : {2, 3}) {
    const auto t = tree(G);
    const auto p = ctrw_matrix(t.d, {1.0, 200.0});
    const double uniform = 1.0 / static_cast<double>(p.rows());
    CHECK((p.array() - uniform).abs().maxCoeff() <= 1e-6);
    // The quantum average is not.
    const auto chi = chi_exact(t.d, t.groups);
    CHECK((chi.array() - uniform).abs().maxCoeff() > 0.05);
  }
}

TEST_CASE("quadrature argument checks") {
  const auto t = tree(1);
  CHECK_THROWS_AS(chi_numeric(t.d, 1.0, NodeId{1}, NodeId{1}, 100.0, 999), ContractError);
  CHECK_THROWS_AS(chi_numeric(t.d, 1.0, NodeId{1}, NodeId{1}, 0.0, 1000), ContractError);
  CHECK_THROWS_AS(chi_numeric_matrix(t.d, -1.0, 10.0, 1000), DomainError);
  CHECK_THROWS_AS(chi_exact(t.d, t.groups, 0.0), DomainError);
}
