#include "ctqw/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "ctqw/errors.hpp"

namespace ctqw {

Graph::Graph(std::size_t n_nodes, std::vector<Edge> edges)
    : n_nodes_(n_nodes), edges_(std::move(edges)), neighbors_(n_nodes) {
  if (n_nodes_ == 0) throw ContractError("graph must have at least one node");
  for (auto& [a, b] : edges_) {
    check_node(a);
    check_node(b);
    if (a == b) throw ContractError("self-loop at node " + std::to_string(a.value));
    if (b < a) std::swap(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw ContractError("duplicate edge " + std::to_string(dup->first.value) + " " +
                        std::to_string(dup->second.value));
  }
  for (const auto& [a, b] : edges_) {
    neighbors_[a.index()].push_back(b);
    neighbors_[b.index()].push_back(a);
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());
}

void Graph::check_node(NodeId node) const {
  if (node.value < 1 || static_cast<std::size_t>(node.value) > n_nodes_) {
    throw InvalidNodeError("node id " + std::to_string(node.value) + " outside 1.." +
                           std::to_string(n_nodes_));
  }
}

std::size_t Graph::degree(NodeId node) const { return neighbors(node).size(); }

const std::vector<NodeId>& Graph::neighbors(NodeId node) const {
  check_node(node);
  return neighbors_[node.index()];
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  const auto& list = neighbors(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::size_t GluedTreeSpec::node_count() const {
  if (generation < 1) throw InvalidGenerationError("generation must be >= 1");
  return 3 * (std::size_t{1} << generation) - 2;
}

std::size_t GluedTreeSpec::row_width(int row) const {
  if (row < 1 || row > row_count()) throw ContractError("row outside 1..2G+1");
  const int exponent = row <= generation + 1 ? row - 1 : 2 * generation + 1 - row;
  return std::size_t{1} << exponent;
}

NodeId GluedTreeSpec::node_at(int row, std::size_t position) const {
  if (position < 1 || position > row_width(row)) throw ContractError("position outside row");
  std::size_t offset = 0;
  for (int r = 1; r < row; ++r) offset += row_width(r);
  return NodeId{static_cast<int>(offset + position)};
}

std::vector<NodeId> GluedTreeSpec::row_nodes(int row) const {
  std::vector<NodeId> nodes;
  const auto first = node_at(row, 1);
  for (std::size_t p = 0; p < row_width(row); ++p) nodes.push_back(NodeId{first.value + static_cast<int>(p)});
  return nodes;
}

Graph build_glued_tree(const GluedTreeSpec& spec) {
  if (spec.generation < 1) throw InvalidGenerationError("generation must be >= 1");
  // 2^G leaves per tree; beyond this the node count overflows int ids anyway.
  if (spec.generation > 24) throw InvalidGenerationError("generation too large");

  const int G = spec.generation;
  std::vector<Edge> edges;
  for (int r = 1; r <= 2 * G; ++r) {
    // Upper tree fans out downwards, lower tree fans in.
    const int narrow = r <= G ? r : r + 1;
    const int wide = r <= G ? r + 1 : r;
    for (std::size_t p = 1; p <= spec.row_width(narrow); ++p) {
      const NodeId parent = spec.node_at(narrow, p);
      edges.emplace_back(parent, spec.node_at(wide, 2 * p - 1));
      edges.emplace_back(parent, spec.node_at(wide, 2 * p));
    }
  }
  return Graph(spec.node_count(), std::move(edges));
}

std::vector<NodeId> left_right_mirror(const GluedTreeSpec& spec) {
  std::vector<NodeId> map(spec.node_count());
  for (int r = 1; r <= spec.row_count(); ++r) {
    const auto width = spec.row_width(r);
    for (std::size_t p = 1; p <= width; ++p) map[spec.node_at(r, p).index()] = spec.node_at(r, width + 1 - p);
  }
  return map;
}

std::vector<NodeId> top_bottom_mirror(const GluedTreeSpec& spec) {
  std::vector<NodeId> map(spec.node_count());
  for (int r = 1; r <= spec.row_count(); ++r) {
    for (std::size_t p = 1; p <= spec.row_width(r); ++p) {
      map[spec.node_at(r, p).index()] = spec.node_at(spec.row_count() + 1 - r, p);
    }
  }
  return map;
}

namespace {

bool parse_id(std::string_view token, int& out) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc{} && ptr == end && out >= 1;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::map<Edge, std::size_t> seen;
  int max_id = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(line_no, "expected two node ids");
    int a = 0;
    int b = 0;
    if (!parse_id(tokens[0], a) || !parse_id(tokens[1], b)) {
      throw ParseError(line_no, "node ids must be positive integers");
    }
    if (a == b) throw ParseError(line_no, "self-loop at node " + std::to_string(a));
    Edge e{NodeId{std::min(a, b)}, NodeId{std::max(a, b)}};
    if (auto [it, fresh] = seen.emplace(e, line_no); !fresh) {
      throw ParseError(line_no, "duplicate edge (first seen at line " + std::to_string(it->second) + ")");
    }
    edges.push_back(e);
    max_id = std::max({max_id, a, b});
  }
  if (edges.empty()) throw ParseError(line_no, "edge list contains no edges");
  return Graph(static_cast<std::size_t>(max_id), std::move(edges));
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string serialize(const Graph& g) {
  std::string out;
  for (const auto& [a, b] : g.edges()) {
    out += std::to_string(a.value);
    out += ' ';
    out += std::to_string(b.value);
    out += '\n';
  }
  return out;
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n_nodes());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    const auto i = static_cast<Eigen::Index>(u.index());
    const auto j = static_cast<Eigen::Index>(v.index());
    a(i, j) = -1.0;
    a(j, i) = -1.0;
    a(i, i) += 1.0;
    a(j, j) += 1.0;
  }
  return a;
}

}  // namespace ctqw
