#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace comgpt {

using NodeId = std::int64_t;
using NodeSet = std::set<NodeId>;

/// Thrown by the file loaders on a malformed input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Immutable undirected simple graph over arbitrary non-negative integer
/// node ids. Adjacency lists are kept sorted; no self-loops, no parallel
/// edges, and v in adj(u) iff u in adj(v).
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list plus optional isolated nodes.
  /// Duplicate and reversed-duplicate edges collapse to one edge.
  /// Self-loops are rejected.
  static Graph from_edges(const std::vector<std::pair<NodeId, NodeId>>& edges,
                          const std::vector<NodeId>& isolated_nodes = {}) {
    std::map<NodeId, std::vector<NodeId>> adj;
    std::vector<std::pair<NodeId, NodeId>> canon;
    canon.reserve(edges.size());
    for (const auto& [u, v] : edges) {
      if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
      if (u < 0 || v < 0) throw std::invalid_argument("negative node id");
      canon.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    for (const auto& [u, v] : canon) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (NodeId v : isolated_nodes) {
      if (v < 0) throw std::invalid_argument("negative node id");
      adj.try_emplace(v);
    }
    Graph g;
    g.edge_count_ = canon.size();
    g.nodes_.reserve(adj.size());
    for (auto& [v, nbrs] : adj) {
      std::sort(nbrs.begin(), nbrs.end());
      g.nodes_.push_back(v);
      g.adjacency_.emplace(v, std::move(nbrs));
    }
    return g;
  }

  bool has_node(NodeId v) const { return adjacency_.count(v) != 0; }

  bool has_edge(NodeId u, NodeId v) const {
    auto it = adjacency_.find(u);
    if (it == adjacency_.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), v);
  }

  /// Sorted neighbor list of v. Errors on unknown nodes.
  const std::vector<NodeId>& neighbors(NodeId v) const {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end())
      throw std::invalid_argument("unknown node " + std::to_string(v));
    return it->second;
  }

  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  /// All node ids, ascending.
  const std::vector<NodeId>& nodes() const { return nodes_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.nodes_ == b.nodes_ && a.adjacency_ == b.adjacency_;
  }
  friend bool operator!=(const Graph& a, const Graph& b) { return !(a == b); }

 private:
  std::unordered_map<NodeId, std::vector<NodeId>> adjacency_;
  std::vector<NodeId> nodes_;
  std::size_t edge_count_ = 0;
};

/// Ground-truth community assignment; nodes may belong to several
/// communities.
class GroundTruth {
 public:
  explicit GroundTruth(std::vector<NodeSet> communities = {})
      : communities_(std::move(communities)) {
    for (std::size_t i = 0; i < communities_.size(); ++i)
      for (NodeId v : communities_[i]) membership_[v].push_back(i);
  }

  const std::vector<NodeSet>& communities() const { return communities_; }

  /// Indices of the communities containing v; empty if v is unknown.
  std::vector<std::size_t> communities_of(NodeId v) const {
    auto it = membership_.find(v);
    if (it == membership_.end()) return {};
    return it->second;
  }

  bool contains(NodeId v) const { return membership_.count(v) != 0; }

  /// Sorted union of all community members.
  std::vector<NodeId> member_pool() const {
    NodeSet pool;
    for (const auto& c : communities_) pool.insert(c.begin(), c.end());
    return {pool.begin(), pool.end()};
  }

 private:
  std::vector<NodeSet> communities_;
  std::unordered_map<NodeId, std::vector<std::size_t>> membership_;
};

struct EdgeListLoadResult {
  Graph graph;
  std::size_t self_loops_dropped = 0;
};

namespace detail {

inline bool parse_node_id(const std::string& tok, NodeId& out) {
  if (tok.empty()) return false;
  for (char ch : tok)
    if (ch < '0' || ch > '9') return false;
  try {
    out = std::stoll(tok);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace detail

/// Parses SNAP-style ungraph text: '#' comment lines, two whitespace
/// separated integer tokens per data line. Duplicate lines and reversed
/// duplicates collapse; self-loop lines are dropped and counted.
inline EdgeListLoadResult load_edge_list(std::istream& in) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> loop_nodes;
  std::size_t self_loops = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    ls >> a >> b;
    if (b.empty()) throw ParseError(line_no, "expected two node ids");
    if (ls >> extra) throw ParseError(line_no, "trailing token '" + extra + "'");
    NodeId u, v;
    if (!detail::parse_node_id(a, u)) throw ParseError(line_no, "bad node id '" + a + "'");
    if (!detail::parse_node_id(b, v)) throw ParseError(line_no, "bad node id '" + b + "'");
    if (u == v) {
      // dropped, but the node itself stays in the graph
      ++self_loops;
      loop_nodes.push_back(u);
      continue;
    }
    edges.emplace_back(u, v);
  }
  return {Graph::from_edges(edges, loop_nodes), self_loops};
}

inline EdgeListLoadResult load_edge_list(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

/// Parses SNAP-style cmty text: one community per line, integer node ids.
inline GroundTruth load_communities(std::istream& in) {
  std::vector<NodeSet> communities;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ls(line);
    NodeSet members;
    std::string tok;
    while (ls >> tok) {
      NodeId v;
      if (!detail::parse_node_id(tok, v)) throw ParseError(line_no, "bad node id '" + tok + "'");
      members.insert(v);
    }
    if (!members.empty()) communities.push_back(std::move(members));
  }
  return GroundTruth(std::move(communities));
}

inline GroundTruth load_communities(const std::string& text) {
  std::istringstream in(text);
  return load_communities(in);
}

namespace detail {

inline void require_members(const Graph& g, const NodeSet& c) {
  if (c.empty()) throw std::invalid_argument("empty community");
  for (NodeId v : c)
    if (!g.has_node(v)) throw std::invalid_argument("node " + std::to_string(v) + " not in graph");
}

}  // namespace detail

/// Nodes at distance 1 or 2 from the community, excluding the community
/// itself.
inline NodeSet first_and_second_order_neighbors(const Graph& g, const NodeSet& c) {
  detail::require_members(g, c);
  NodeSet result;
  NodeSet first;
  for (NodeId u : c)
    for (NodeId v : g.neighbors(u))
      if (!c.count(v)) first.insert(v);
  result = first;
  for (NodeId u : first)
    for (NodeId v : g.neighbors(u))
      if (!c.count(v)) result.insert(v);
  return result;
}

/// Subgraph on exactly the given nodes and the edges among them.
/// Nodes with no retained edge stay as isolated nodes.
inline Graph induced_subgraph(const Graph& g, const NodeSet& nodes) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> all(nodes.begin(), nodes.end());
  for (NodeId u : all) {
    if (!g.has_node(u)) throw std::invalid_argument("node " + std::to_string(u) + " not in graph");
    for (NodeId v : g.neighbors(u))
      if (u < v && nodes.count(v)) edges.emplace_back(u, v);
  }
  return Graph::from_edges(edges, all);
}

}  // namespace comgpt
