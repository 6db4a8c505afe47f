#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "comgpt/graph.hpp"

namespace comgpt {

/// Exact rational with an encoded infinity: den > 0 is the finite value
/// num/den, den == 0 is +/- infinity by the sign of num. Comparisons never
/// go through floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational infinity(int sign) { return Rational{sign >= 0 ? 1 : -1, 0}; }

  static Rational of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return Rational{n, d};
  }

  bool is_infinite() const { return den == 0; }

  int sign() const {
    if (num > 0) return 1;
    if (num < 0) return -1;
    return 0;
  }

  /// -1, 0, or 1. Infinities order above/below every finite value.
  static int compare(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) {
      int sa = a.is_infinite() ? (a.sign() > 0 ? 2 : -2) : 0;
      int sb = b.is_infinite() ? (b.sign() > 0 ? 2 : -2) : 0;
      if (sa != sb) return sa < sb ? -1 : 1;
      return 0;
    }
    __int128 lhs = static_cast<__int128>(a.num) * b.den;
    __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }

  bool operator==(const Rational& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Rational& o) const { return compare(*this, o) != 0; }
  bool operator<(const Rational& o) const { return compare(*this, o) < 0; }
  bool operator>(const Rational& o) const { return compare(*this, o) > 0; }
  bool operator<=(const Rational& o) const { return compare(*this, o) <= 0; }
  bool operator>=(const Rational& o) const { return compare(*this, o) >= 0; }

  double approx() const {
    if (is_infinite())
      return sign() > 0 ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string str() const {
    if (is_infinite()) return sign() > 0 ? "inf" : "-inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

/// Local modularity M of a community: the internal/external edge-count
/// ratio e_ic/e_oc. A fully enclosed community (e_oc = 0 with internal
/// edges) scores the +inf sentinel, which orders above every finite score;
/// an edgeless community scores 0.
struct ModularityScore {
  std::int64_t e_ic = 0;
  std::int64_t e_oc = 0;

  bool is_infinite() const { return e_oc == 0 && e_ic > 0; }

  Rational value() const {
    if (is_infinite()) return Rational::infinity(+1);
    if (e_ic == 0 && e_oc == 0) return Rational{0, 1};
    return Rational::of(e_ic, e_oc);
  }

  static int compare(const ModularityScore& a, const ModularityScore& b) {
    return Rational::compare(a.value(), b.value());
  }

  bool operator==(const ModularityScore& o) const { return compare(*this, o) == 0; }
  bool operator<(const ModularityScore& o) const { return compare(*this, o) < 0; }
  bool operator>(const ModularityScore& o) const { return compare(*this, o) > 0; }

  std::string str() const { return value().str(); }
};

/// Internal and external edge counts of a community: e_ic edges with both
/// endpoints inside, e_oc edges with exactly one endpoint inside.
inline std::pair<std::int64_t, std::int64_t> edge_counts(const Graph& g, const NodeSet& c) {
  detail::require_members(g, c);
  std::int64_t internal_twice = 0;
  std::int64_t external = 0;
  for (NodeId u : c) {
    for (NodeId v : g.neighbors(u)) {
      if (c.count(v))
        ++internal_twice;
      else
        ++external;
    }
  }
  return {internal_twice / 2, external};
}

inline ModularityScore local_modularity_m(const Graph& g, const NodeSet& c) {
  auto [e_ic, e_oc] = edge_counts(g, c);
  return ModularityScore{e_ic, e_oc};
}

namespace detail {

/// M score of c u {v} from the counts of c, without a full recount.
inline ModularityScore score_with_node(const Graph& g, const NodeSet& c, NodeId v,
                                       std::int64_t e_ic, std::int64_t e_oc) {
  std::int64_t links = 0;
  for (NodeId w : g.neighbors(v))
    if (c.count(w)) ++links;
  std::int64_t deg = static_cast<std::int64_t>(g.degree(v));
  return ModularityScore{e_ic + links, e_oc - links + (deg - links)};
}

inline Rational score_difference(const ModularityScore& after, const ModularityScore& before) {
  bool ia = after.is_infinite(), ib = before.is_infinite();
  if (ia && ib) return Rational{0, 1};
  if (ia) return Rational::infinity(+1);
  if (ib) return Rational::infinity(-1);
  Rational a = after.value();
  Rational b = before.value();
  // Both finite; denominators at most the graph's edge count, so the
  // cross products stay far below the int64 range.
  return Rational::of(a.num * b.den - b.num * a.den, a.den * b.den);
}

}  // namespace detail

/// Modularity gain M(c u {v}) - M(c) for a first-order neighbor v of c.
inline Rational delta_m(const Graph& g, const NodeSet& c, NodeId v) {
  detail::require_members(g, c);
  if (c.count(v)) throw std::invalid_argument("node already in community");
  if (!g.has_node(v)) throw std::invalid_argument("node " + std::to_string(v) + " not in graph");
  bool adjacent = false;
  for (NodeId w : g.neighbors(v))
    if (c.count(w)) {
      adjacent = true;
      break;
    }
  if (!adjacent) throw std::invalid_argument("node not adjacent to community");
  auto [e_ic, e_oc] = edge_counts(g, c);
  ModularityScore before{e_ic, e_oc};
  ModularityScore after = detail::score_with_node(g, c, v, e_ic, e_oc);
  return detail::score_difference(after, before);
}

struct ScoredNode {
  NodeId node = 0;
  ModularityScore m_if_added;
};

/// Ordered candidate list: first-order neighbors of the community scored
/// by the modularity the community would have after adding them, best
/// first, ties broken by ascending node id, truncated to k.
struct PotentialNodes {
  std::vector<ScoredNode> entries;
  std::size_t k = 0;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }

  bool contains(NodeId v) const {
    for (const auto& e : entries)
      if (e.node == v) return true;
    return false;
  }

  std::vector<NodeId> node_list() const {
    std::vector<NodeId> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.node);
    return out;
  }

  NodeSet node_set() const {
    NodeSet out;
    for (const auto& e : entries) out.insert(e.node);
    return out;
  }
};

namespace detail {

inline PotentialNodes scored_neighbors(const Graph& g, const NodeSet& c, std::size_t k,
                                       bool require_positive_gain) {
  require_members(g, c);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  auto [e_ic, e_oc] = edge_counts(g, c);
  ModularityScore before{e_ic, e_oc};
  NodeSet frontier;
  for (NodeId u : c)
    for (NodeId v : g.neighbors(u))
      if (!c.count(v)) frontier.insert(v);
  PotentialNodes pn;
  pn.k = k;
  for (NodeId v : frontier) {
    ModularityScore after = score_with_node(g, c, v, e_ic, e_oc);
    if (require_positive_gain && score_difference(after, before).sign() <= 0) continue;
    pn.entries.push_back(ScoredNode{v, after});
  }
  std::sort(pn.entries.begin(), pn.entries.end(), [](const ScoredNode& a, const ScoredNode& b) {
    int cmp = ModularityScore::compare(a.m_if_added, b.m_if_added);
    if (cmp != 0) return cmp > 0;
    return a.node < b.node;
  });
  if (pn.entries.size() > k) pn.entries.resize(k);
  return pn;
}

}  // namespace detail

/// First-order neighbors with strictly positive modularity gain, top-k by
/// resulting M. An empty result is valid and ends the selection loop.
inline PotentialNodes potential_nodes(const Graph& g, const NodeSet& c, std::size_t k) {
  return detail::scored_neighbors(g, c, k, /*require_positive_gain=*/true);
}

/// Local modularity R: I/T over the boundary of c, where B is the set of
/// members with at least one outside neighbor, T the edges touching B, and
/// I the T-edges staying inside c. R = 0 when T = 0.
inline Rational local_modularity_r(const Graph& g, const NodeSet& c) {
  detail::require_members(g, c);
  NodeSet boundary;
  for (NodeId u : c)
    for (NodeId v : g.neighbors(u))
      if (!c.count(v)) {
        boundary.insert(u);
        break;
      }
  std::int64_t t = 0, i = 0;
  for (NodeId u : boundary) {
    for (NodeId v : g.neighbors(u)) {
      if (boundary.count(v) && v < u) continue;  // both ends in B: count once
      ++t;
      if (c.count(v)) ++i;
    }
  }
  if (t == 0) return Rational{0, 1};
  return Rational::of(i, t);
}

}  // namespace comgpt
