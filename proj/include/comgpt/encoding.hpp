#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "comgpt/graph.hpp"

namespace comgpt {

/// Version tag of the sentence grammar below. The encoded text reaches a
/// third-party model, so the grammar is an external contract: any change
/// must bump this tag, and every experiment report records it.
inline constexpr const char* kEncodingVersion = "enc-v1";

/// Local-network text handed to the oracle: incident-style topology lines
/// followed, after a blank line, by community knowledge (who is inside,
/// who is outside, and how the outside nodes connect).
struct GraphText {
  std::string topology_text;
  std::string supplement_text;
  std::string full_text;
  std::vector<NodeId> inside;       // sorted
  std::vector<NodeId> outside;      // sorted
  std::vector<NodeId> local_nodes;  // every encoded node, sorted
};

namespace detail {

inline std::string join_ids(const std::vector<NodeId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace detail

/// One line per node in ascending id order:
///   `Node <i> is connected to nodes <a>, <b>.`
/// with neighbors ascending; degree-0 nodes render
///   `Node <i> has no connections.`
inline std::string encode_topology(const Graph& local) {
  std::string out;
  bool first = true;
  for (NodeId v : local.nodes()) {
    if (!first) out += "\n";
    first = false;
    const auto& nbrs = local.neighbors(v);
    if (nbrs.empty()) {
      out += "Node " + std::to_string(v) + " has no connections.";
    } else {
      out += "Node " + std::to_string(v) + " is connected to nodes " + detail::join_ids(nbrs) + ".";
    }
  }
  return out;
}

/// Community knowledge block:
///   `Community C contains nodes: <sorted c>.`
///   `Outside nodes: <outside in given order>.`   ("none" when empty)
/// then one line per outside node p with its connection counts into C and
/// into the other outside nodes, within the local graph.
inline std::string encode_supplement(const Graph& local, const NodeSet& c,
                                     const std::vector<NodeId>& outside) {
  for (NodeId v : c)
    if (!local.has_node(v)) throw std::invalid_argument("community node not in local graph");
  NodeSet outside_set;
  for (NodeId v : outside) {
    if (!local.has_node(v)) throw std::invalid_argument("outside node not in local graph");
    if (c.count(v)) throw std::invalid_argument("node " + std::to_string(v) + " both inside and outside");
    outside_set.insert(v);
  }
  std::vector<NodeId> inside(c.begin(), c.end());
  std::string out = "Community C contains nodes: " + detail::join_ids(inside) + ".";
  out += "\nOutside nodes: " + (outside.empty() ? std::string("none") : detail::join_ids(outside)) + ".";
  for (NodeId p : outside) {
    std::int64_t into_c = 0, into_outside = 0;
    for (NodeId w : local.neighbors(p)) {
      if (c.count(w))
        ++into_c;
      else if (outside_set.count(w))
        ++into_outside;
    }
    out += "\nOutside node " + std::to_string(p) + " connects to " + std::to_string(into_c) +
           " node(s) inside C and " + std::to_string(into_outside) + " node(s) outside C.";
  }
  return out;
}

/// Full encoding: topology, a blank line, then the community supplement.
inline GraphText encode_graph_text(const Graph& local, const NodeSet& c,
                                   const std::vector<NodeId>& outside) {
  GraphText gtxt;
  gtxt.topology_text = encode_topology(local);
  gtxt.supplement_text = encode_supplement(local, c, outside);
  gtxt.full_text = gtxt.topology_text + "\n\n" + gtxt.supplement_text;
  gtxt.inside.assign(c.begin(), c.end());
  gtxt.outside.assign(outside.begin(), outside.end());
  std::sort(gtxt.outside.begin(), gtxt.outside.end());
  gtxt.local_nodes = local.nodes();
  return gtxt;
}

/// Topology-only variant (the encoder the ablation harness uses when the
/// community supplement is switched off).
inline GraphText encode_topology_only(const Graph& local, const NodeSet& c,
                                      const std::vector<NodeId>& outside) {
  GraphText gtxt;
  gtxt.topology_text = encode_topology(local);
  gtxt.supplement_text.clear();
  gtxt.full_text = gtxt.topology_text;
  gtxt.inside.assign(c.begin(), c.end());
  gtxt.outside.assign(outside.begin(), outside.end());
  std::sort(gtxt.outside.begin(), gtxt.outside.end());
  gtxt.local_nodes = local.nodes();
  return gtxt;
}

}  // namespace comgpt
