#pragma once

#include <optional>
#include <vector>

#include "comgpt/graph.hpp"
#include "comgpt/scoring.hpp"

namespace comgpt {

/// Result of a deterministic greedy expansion. added[0] is the seed and
/// every later node was adjacent to the community when it joined.
struct ExpansionTrace {
  NodeId seed = 0;
  std::vector<NodeId> added;
  ModularityScore final_m;
  Rational final_r{0, 1};

  NodeSet node_set() const { return NodeSet(added.begin(), added.end()); }
};

/// Greedy M maximizer: repeatedly adds the first-order neighbor with the
/// largest modularity gain while any neighbor has a strictly positive
/// gain. Ties break toward the smaller node id.
inline ExpansionTrace expand_m_method(const Graph& g, NodeId seed) {
  if (!g.has_node(seed)) throw std::invalid_argument("unknown seed " + std::to_string(seed));
  ExpansionTrace trace;
  trace.seed = seed;
  trace.added.push_back(seed);
  NodeSet c{seed};
  while (true) {
    // The positive-gain argmax of M(c u {v}) is the head of the
    // potential-node ordering, so k = 1 suffices.
    PotentialNodes pn = potential_nodes(g, c, 1);
    if (pn.empty()) break;
    NodeId v = pn.entries.front().node;
    trace.added.push_back(v);
    c.insert(v);
  }
  trace.final_m = local_modularity_m(g, c);
  trace.final_r = local_modularity_r(g, c);
  return trace;
}

/// Greedy R maximizer, same loop shape with the boundary-sharpness score.
inline ExpansionTrace expand_r_method(const Graph& g, NodeId seed) {
  if (!g.has_node(seed)) throw std::invalid_argument("unknown seed " + std::to_string(seed));
  ExpansionTrace trace;
  trace.seed = seed;
  trace.added.push_back(seed);
  NodeSet c{seed};
  while (true) {
    Rational current = local_modularity_r(g, c);
    NodeSet frontier;
    for (NodeId u : c)
      for (NodeId v : g.neighbors(u))
        if (!c.count(v)) frontier.insert(v);
    std::optional<NodeId> best;
    Rational best_r{0, 1};
    for (NodeId v : frontier) {  // ascending ids, so first max wins ties
      NodeSet cand = c;
      cand.insert(v);
      Rational r = local_modularity_r(g, cand);
      if (!best || r > best_r) {
        best = v;
        best_r = r;
      }
    }
    if (!best || !(best_r > current)) break;
    trace.added.push_back(*best);
    c.insert(*best);
  }
  trace.final_m = local_modularity_m(g, c);
  trace.final_r = local_modularity_r(g, c);
  return trace;
}

/// Head of the candidate ordering: the max-M entry.
inline NodeId select_first_of_pn(const PotentialNodes& pn) {
  if (pn.empty()) throw std::invalid_argument("empty potential-node set");
  return pn.entries.front().node;
}

}  // namespace comgpt
