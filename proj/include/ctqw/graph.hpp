#pragma once

#include <compare>
#include <cstddef>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ctqw {

// 1-based node identifier, as used in every external interface.
struct NodeId {
  int value = 1;

  constexpr std::size_t index() const { return static_cast<std::size_t>(value - 1); }
  static constexpr NodeId from_index(std::size_t i) { return NodeId{static_cast<int>(i) + 1}; }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

using Edge = std::pair<NodeId, NodeId>;

// Simple undirected graph on nodes 1..n_nodes. Edges are stored normalized
// (smaller id first) and sorted; the value is immutable after construction.
class Graph {
 public:
  // Throws ContractError on self-loops, duplicate edges or ids outside 1..n_nodes.
  Graph(std::size_t n_nodes, std::vector<Edge> edges);

  std::size_t n_nodes() const { return n_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t degree(NodeId node) const;
  const std::vector<NodeId>& neighbors(NodeId node) const;
  bool has_edge(NodeId a, NodeId b) const;

  // Throws InvalidNodeError when the id is outside 1..n_nodes.
  void check_node(NodeId node) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_nodes_ == b.n_nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> neighbors_;
};

// Two binary trees of generation G glued along their 2^G leaves.
struct GluedTreeSpec {
  int generation = 1;

  std::size_t node_count() const;
  int row_count() const { return 2 * generation + 1; }
  // Number of nodes in row r (1-based, top to bottom).
  std::size_t row_width(int row) const;
  // Id of the node at 1-based position p of row r.
  NodeId node_at(int row, std::size_t position) const;
  std::vector<NodeId> row_nodes(int row) const;
};

// Rows are numbered 1..2G+1 top to bottom, nodes row-major left to right from 1.
// Row r <= G position p links to row r+1 positions 2p-1, 2p; the lower tree
// mirrors this. Throws InvalidGenerationError for G < 1.
Graph build_glued_tree(const GluedTreeSpec& spec);

// Reflections of the glued tree: position p -> width+1-p, and row r -> 2G+2-r.
std::vector<NodeId> left_right_mirror(const GluedTreeSpec& spec);
std::vector<NodeId> top_bottom_mirror(const GluedTreeSpec& spec);

// Whitespace separated pairs of positive ids, one edge per line, '#' starts
// a comment. Throws ParseError carrying the offending line number.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

// One edge per line, smaller id first, ascending order.
std::string serialize(const Graph& g);

// Laplacian with degrees on the diagonal and -1 per bond.
Eigen::MatrixXd adjacency_matrix(const Graph& g);

}  // namespace ctqw
