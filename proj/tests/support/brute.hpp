#pragma once

// Reference implementations the tests check the library against. Each one
// recomputes from the definitions with full scans, no incremental updates,
// so a bug in the library's shortcuts cannot hide here.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <utility>
#include <vector>

#include "comgpt/graph.hpp"

namespace brute {

using comgpt::Graph;
using comgpt::NodeId;
using comgpt::NodeSet;

// num/den with den == 0 meaning +infinity; never 0/0.
struct Frac {
  long long num = 0;
  long long den = 1;
};

inline int cmp(const Frac& a, const Frac& b) {
  bool ia = a.den == 0;
  bool ib = b.den == 0;
  if (ia || ib) {
    if (ia && ib) return 0;
    return ia ? 1 : -1;
  }
  __int128 lhs = static_cast<__int128>(a.num) * b.den;
  __int128 rhs = static_cast<__int128>(b.num) * a.den;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

struct EdgeCounts {
  long long internal_edges = 0;
  long long external_edges = 0;
};

// Walks every edge of the whole graph exactly once.
inline EdgeCounts edge_counts(const Graph& g, const NodeSet& c) {
  EdgeCounts ec;
  for (NodeId u : g.nodes())
    for (NodeId v : g.neighbors(u)) {
      if (v <= u) continue;
      bool cu = c.count(u) != 0;
      bool cv = c.count(v) != 0;
      if (cu && cv)
        ++ec.internal_edges;
      else if (cu != cv)
        ++ec.external_edges;
    }
  return ec;
}

inline Frac local_m(const Graph& g, const NodeSet& c) {
  EdgeCounts ec = brute::edge_counts(g, c);
  if (ec.external_edges == 0) {
    if (ec.internal_edges == 0) return Frac{0, 1};
    return Frac{1, 0};
  }
  return Frac{ec.internal_edges, ec.external_edges};
}

// First-order neighbors of c, found by scanning all nodes.
inline NodeSet frontier(const Graph& g, const NodeSet& c) {
  NodeSet f;
  for (NodeId u : g.nodes()) {
    if (c.count(u)) continue;
    for (NodeId v : g.neighbors(u))
      if (c.count(v)) {
        f.insert(u);
        break;
      }
  }
  return f;
}

// First- and second-order neighbors of c.
inline NodeSet two_hop(const Graph& g, const NodeSet& c) {
  NodeSet first = frontier(g, c);
  NodeSet out = first;
  for (NodeId v : first)
    for (NodeId w : g.neighbors(v))
      if (!c.count(w)) out.insert(w);
  return out;
}

// Candidate ranking: recompute M(c + v) for every frontier node, keep the
// strictly improving ones, order by M descending then id ascending, cut at k.
inline std::vector<std::pair<NodeId, Frac>> potential_nodes(const Graph& g, const NodeSet& c,
                                                            std::size_t k) {
  Frac before = local_m(g, c);
  std::vector<std::pair<NodeId, Frac>> out;
  for (NodeId v : frontier(g, c)) {
    NodeSet cc = c;
    cc.insert(v);
    Frac after = local_m(g, cc);
    if (cmp(after, before) > 0) out.emplace_back(v, after);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int d = cmp(a.second, b.second);
    if (d != 0) return d > 0;
    return a.first < b.first;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

// Same ranking with the improvement filter off.
inline std::vector<std::pair<NodeId, Frac>> ranked_frontier(const Graph& g, const NodeSet& c,
                                                            std::size_t k) {
  std::vector<std::pair<NodeId, Frac>> out;
  for (NodeId v : frontier(g, c)) {
    NodeSet cc = c;
    cc.insert(v);
    out.emplace_back(v, local_m(g, cc));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int d = cmp(a.second, b.second);
    if (d != 0) return d > 0;
    return a.first < b.first;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

inline Frac local_r(const Graph& g, const NodeSet& c) {
  NodeSet boundary;
  for (NodeId u : c)
    for (NodeId v : g.neighbors(u))
      if (!c.count(v)) {
        boundary.insert(u);
        break;
      }
  long long t = 0;
  long long i = 0;
  for (NodeId u : g.nodes())
    for (NodeId v : g.neighbors(u)) {
      if (v <= u) continue;
      if (!boundary.count(u) && !boundary.count(v)) continue;
      ++t;
      if (c.count(u) && c.count(v)) ++i;
    }
  if (t == 0) return Frac{0, 1};
  return Frac{i, t};
}

// Greedy M reference: add the strictly improving frontier node with the
// largest resulting M (first in ascending order on ties) until none improves.
inline std::vector<NodeId> greedy_m(const Graph& g, NodeId seed) {
  NodeSet c{seed};
  std::vector<NodeId> order{seed};
  while (true) {
    Frac before = local_m(g, c);
    std::optional<NodeId> best;
    Frac best_m{0, 1};
    for (NodeId v : frontier(g, c)) {
      NodeSet cc = c;
      cc.insert(v);
      Frac after = local_m(g, cc);
      if (cmp(after, before) <= 0) continue;
      if (!best || cmp(after, best_m) > 0) {
        best = v;
        best_m = after;
      }
    }
    if (!best) break;
    c.insert(*best);
    order.push_back(*best);
  }
  return order;
}

inline std::vector<NodeId> greedy_r(const Graph& g, NodeId seed) {
  NodeSet c{seed};
  std::vector<NodeId> order{seed};
  while (true) {
    Frac current = local_r(g, c);
    std::optional<NodeId> best;
    Frac best_r{0, 1};
    for (NodeId v : frontier(g, c)) {
      NodeSet cc = c;
      cc.insert(v);
      Frac r = local_r(g, cc);
      if (!best || cmp(r, best_r) > 0) {
        best = v;
        best_r = r;
      }
    }
    if (!best || cmp(best_r, current) <= 0) break;
    c.insert(*best);
    order.push_back(*best);
  }
  return order;
}

inline double fscore(const NodeSet& d, const NodeSet& t) {
  std::vector<NodeId> inter;
  std::set_intersection(d.begin(), d.end(), t.begin(), t.end(), std::back_inserter(inter));
  return 2.0 * static_cast<double>(inter.size()) / static_cast<double>(d.size() + t.size());
}

inline double jaccard(const NodeSet& d, const NodeSet& t) {
  std::vector<NodeId> inter;
  std::set_intersection(d.begin(), d.end(), t.begin(), t.end(), std::back_inserter(inter));
  std::vector<NodeId> uni;
  std::set_union(d.begin(), d.end(), t.begin(), t.end(), std::back_inserter(uni));
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

}  // namespace brute
