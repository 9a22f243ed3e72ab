#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ctqw/graph.hpp"
#include "ctqw/walk.hpp"

namespace ctqw {

// Ordered chain of clusters. Every node of cluster k has the same degree f_k,
// the same number of neighbours in clusters k-1 and k+1, and none elsewhere
// (including inside its own cluster). Only produced by make_partition and the
// builders below, all of which validate this.
struct ClusterPartition {
  std::vector<std::vector<NodeId>> clusters;
  std::vector<std::size_t> sizes;          // d_k
  std::vector<std::size_t> bonds;          // b_k, edges between clusters k and k+1
  std::vector<std::size_t> functionality;  // f_k

  std::size_t cluster_count() const { return clusters.size(); }
  std::size_t node_count() const;
};

// Validates the chain structure against the graph; throws StructuralError
// if the clusters do not form an equitable chain covering every node once.
ClusterPartition make_partition(const Graph& g, std::vector<std::vector<NodeId>> clusters);

// BFS layering: layer k+1 holds the unvisited neighbours of layer k.
ClusterPartition layered_partition(const Graph& g, std::vector<NodeId> seed);

// Layers grown from the left half of the axis row of a glued tree.
ClusterPartition left_right_partition(const GluedTreeSpec& spec, const Graph& g);

// The 2G+1 rows of a glued tree, top to bottom.
ClusterPartition row_partition(const GluedTreeSpec& spec, const Graph& g);

// N x M matrix whose column k is |a_k> = d_k^{-1/2} sum_{n in k} |n>.
Eigen::MatrixXd symmetric_basis(const ClusterPartition& partition);

// Tridiagonal Atilde_jk = <a_j|A|a_k> acting on the symmetric states.
struct ReducedChain {
  Eigen::MatrixXd matrix;
  ClusterPartition basis;
};

// Computes Atilde by projecting A onto the symmetric states and again from
// f_k and -b_k / sqrt(d_k d_{k+1}); the two must agree to 1e-12, otherwise
// StructuralError.
ReducedChain reduce(const ClusterPartition& partition, const Eigen::MatrixXd& a);

// Walk on the chain with Htilde = gamma * Atilde. Cluster indices are 0-based
// in the matrices.
struct ReducedWalk {
  double time = 0.0;
  Eigen::MatrixXcd amplitudes;  // <a_j| exp(-i Htilde t) |a_k>
  Eigen::MatrixXd probabilities;
  Eigen::MatrixXd classical;    // <a_j| exp(-gamma Atilde t) |a_k>
  Eigen::MatrixXd chi;          // long-time average of probabilities
};

ReducedWalk reduced_walk(const ReducedChain& chain, const WalkParams& params,
                         std::optional<double> degeneracy_tol = std::nullopt);

// Probability of finding the classical walker anywhere in cluster j when it
// starts uniformly spread over cluster k: sqrt(d_j / d_k) * classical_jk.
Eigen::MatrixXd cluster_occupation(const ClusterPartition& partition, const Eigen::MatrixXd& classical);

}  // namespace ctqw
