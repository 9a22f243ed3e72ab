#include "ctqw/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctqw/errors.hpp"
#include "ctqw/limiting.hpp"
#include "ctqw/spectral.hpp"

namespace ctqw {

namespace {

constexpr double kReductionTolerance = 1e-12;

std::string cluster_name(std::size_t k) { return "cluster " + std::to_string(k + 1); }

// Cluster index of every node, or throws if the clusters are not a partition.
std::vector<std::size_t> membership(std::size_t n_nodes, const std::vector<std::vector<NodeId>>& clusters) {
  constexpr auto unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n_nodes, unassigned);
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    if (clusters[k].empty()) throw StructuralError(cluster_name(k) + " is empty");
    for (const auto node : clusters[k]) {
      if (node.value < 1 || static_cast<std::size_t>(node.value) > n_nodes) {
        throw StructuralError(cluster_name(k) + " holds unknown node " + std::to_string(node.value));
      }
      if (owner[node.index()] != unassigned) {
        throw StructuralError("node " + std::to_string(node.value) + " appears in two clusters");
      }
      owner[node.index()] = k;
    }
  }
  for (std::size_t i = 0; i < n_nodes; ++i) {
    if (owner[i] == unassigned) throw StructuralError("node " + std::to_string(i + 1) + " is in no cluster");
  }
  return owner;
}

// Reads neighbour counts off the Laplacian so that reduce() can re-check a
// partition against whatever matrix it is handed.
void fill_counts(ClusterPartition& part, const Eigen::MatrixXd& a) {
  const auto n_nodes = static_cast<std::size_t>(a.rows());
  const auto owner = membership(n_nodes, part.clusters);
  const std::size_t m = part.clusters.size();

  part.sizes.assign(m, 0);
  part.functionality.assign(m, 0);
  part.bonds.assign(m > 0 ? m - 1 : 0, 0);

  for (std::size_t k = 0; k < m; ++k) {
    part.sizes[k] = part.clusters[k].size();
    std::optional<std::size_t> degree;
    std::optional<std::size_t> up;
    std::optional<std::size_t> down;
    for (const auto node : part.clusters[k]) {
      const auto i = static_cast<Eigen::Index>(node.index());
      std::size_t to_prev = 0;
      std::size_t to_next = 0;
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        if (j == i || a(i, j) == 0.0) continue;
        if (a(i, j) != -1.0) throw StructuralError("matrix is not an unweighted graph Laplacian");
        const std::size_t other = owner[static_cast<std::size_t>(j)];
        if (other + 1 == k) {
          ++to_prev;
        } else if (other == k + 1) {
          ++to_next;
        } else {
          throw StructuralError("node " + std::to_string(node.value) + " in " + cluster_name(k) +
                                " has a neighbour in non-adjacent " + cluster_name(other));
        }
      }
      const auto deg = static_cast<std::size_t>(std::llround(a(i, i)));
      if (static_cast<double>(deg) != a(i, i) || deg != to_prev + to_next) {
        throw StructuralError("diagonal of node " + std::to_string(node.value) + " is not its degree");
      }
      if ((degree && *degree != deg) || (up && *up != to_prev) || (down && *down != to_next)) {
        throw StructuralError(cluster_name(k) + " is not equitable");
      }
      degree = deg;
      up = to_prev;
      down = to_next;
    }
    part.functionality[k] = *degree;
    if (k + 1 < m) part.bonds[k] = *down * part.sizes[k];
  }
}

void check_against(const Graph& g, const GluedTreeSpec& spec) {
  if (g != build_glued_tree(spec)) throw ContractError("graph is not the glued tree of the given generation");
}

}  // namespace

std::size_t ClusterPartition::node_count() const {
  std::size_t total = 0;
  for (const auto& c : clusters) total += c.size();
  return total;
}

ClusterPartition make_partition(const Graph& g, std::vector<std::vector<NodeId>> clusters) {
  ClusterPartition part;
  part.clusters = std::move(clusters);
  fill_counts(part, adjacency_matrix(g));
  return part;
}

ClusterPartition layered_partition(const Graph& g, std::vector<NodeId> seed) {
  std::vector<bool> visited(g.n_nodes(), false);
  for (const auto node : seed) {
    g.check_node(node);
    visited[node.index()] = true;
  }
  std::vector<std::vector<NodeId>> layers;
  std::vector<NodeId> current = std::move(seed);
  while (!current.empty()) {
    std::vector<NodeId> next;
    for (const auto node : current) {
      for (const auto nb : g.neighbors(node)) {
        if (!visited[nb.index()]) {
          visited[nb.index()] = true;
          next.push_back(nb);
        }
      }
    }
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(current));
    current = std::move(next);
  }
  return make_partition(g, std::move(layers));
}

ClusterPartition left_right_partition(const GluedTreeSpec& spec, const Graph& g) {
  check_against(g, spec);
  const int axis = spec.generation + 1;
  auto seed = spec.row_nodes(axis);
  seed.resize(seed.size() / 2);
  return layered_partition(g, std::move(seed));
}

ClusterPartition row_partition(const GluedTreeSpec& spec, const Graph& g) {
  check_against(g, spec);
  std::vector<std::vector<NodeId>> rows;
  for (int r = 1; r <= spec.row_count(); ++r) rows.push_back(spec.row_nodes(r));
  return make_partition(g, std::move(rows));
}

Eigen::MatrixXd symmetric_basis(const ClusterPartition& partition) {
  const auto n = static_cast<Eigen::Index>(partition.node_count());
  const auto m = static_cast<Eigen::Index>(partition.cluster_count());
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& cluster = partition.clusters[static_cast<std::size_t>(k)];
    const double weight = 1.0 / std::sqrt(static_cast<double>(cluster.size()));
    for (const auto node : cluster) basis(static_cast<Eigen::Index>(node.index()), k) = weight;
  }
  return basis;
}

ReducedChain reduce(const ClusterPartition& partition, const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || static_cast<std::size_t>(a.rows()) != partition.node_count()) {
    throw ContractError("matrix size does not match the partition");
  }
  ClusterPartition checked;
  checked.clusters = partition.clusters;
  fill_counts(checked, a);
  if (checked.sizes != partition.sizes || checked.bonds != partition.bonds ||
      checked.functionality != partition.functionality) {
    throw StructuralError("partition counts do not match the matrix");
  }

  const auto m = static_cast<Eigen::Index>(partition.cluster_count());

  // Route 1: <a_j|A|a_k> by direct summation over cluster members.
  Eigen::MatrixXd projected = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& cj = partition.clusters[static_cast<std::size_t>(j)];
      const auto& ck = partition.clusters[static_cast<std::size_t>(k)];
      double sum = 0.0;
      for (const auto n1 : cj) {
        for (const auto n2 : ck) sum += a(static_cast<Eigen::Index>(n1.index()), static_cast<Eigen::Index>(n2.index()));
      }
      projected(j, k) = sum / std::sqrt(static_cast<double>(cj.size() * ck.size()));
    }
  }

  // Route 2: f_k on the diagonal, -b_k / sqrt(d_k d_{k+1}) beside it.
  Eigen::MatrixXd formula = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    formula(k, k) = static_cast<double>(partition.functionality[kk]);
    if (k + 1 < m) {
      const double off = -static_cast<double>(partition.bonds[kk]) /
                         std::sqrt(static_cast<double>(partition.sizes[kk] * partition.sizes[kk + 1]));
      formula(k, k + 1) = off;
      formula(k + 1, k) = off;
    }
  }

  const double gap = (projected - formula).cwiseAbs().maxCoeff();
  if (!(gap <= kReductionTolerance)) {
    throw StructuralError("projected and formula reduced matrices differ by " + std::to_string(gap));
  }
  return {formula, partition};
}

ReducedWalk reduced_walk(const ReducedChain& chain, const WalkParams& params, std::optional<double> degeneracy_tol) {
  validate(params);
  const auto d = decompose_symmetric(chain.matrix);
  ReducedWalk out;
  out.time = params.time;
  out.amplitudes = ctqw_amplitude_matrix(d, params);
  out.probabilities = out.amplitudes.cwiseAbs2();
  out.classical = ctrw_matrix(d, params);
  out.chi = chi_exact(d, group_degenerate(d, degeneracy_tol), params.gamma);
  return out;
}

Eigen::MatrixXd cluster_occupation(const ClusterPartition& partition, const Eigen::MatrixXd& classical) {
  const auto m = static_cast<Eigen::Index>(partition.cluster_count());
  if (classical.rows() != m || classical.cols() != m) throw ContractError("matrix size does not match the partition");
  Eigen::MatrixXd occupation(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const double dj = static_cast<double>(partition.sizes[static_cast<std::size_t>(j)]);
      const double dk = static_cast<double>(partition.sizes[static_cast<std::size_t>(k)]);
      occupation(j, k) = std::sqrt(dj / dk) * classical(j, k);
    }
  }
  return occupation;
}

}  // namespace ctqw
