#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "comgpt/expansion.hpp"
#include "support/brute.hpp"
#include "support/random_graphs.hpp"

using namespace comgpt;

namespace {

Graph two_triangles() {
  return Graph::from_edges({{1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {5, 6}});
}

Graph k4_pendant() {
  return Graph::from_edges({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {4, 5}});
}

// Relabel by a permutation over the node list.
Graph relabeled(const Graph& g, const std::map<NodeId, NodeId>& pi) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> isolated;
  for (NodeId u : g.nodes()) {
    if (g.neighbors(u).empty()) isolated.push_back(pi.at(u));
    for (NodeId v : g.neighbors(u))
      if (u < v) edges.emplace_back(pi.at(u), pi.at(v));
  }
  return Graph::from_edges(edges, isolated);
}

}  // namespace

TEST_CASE("greedy M expansion on the bridged triangles", "[expansion]") {
  Graph g = two_triangles();
  ExpansionTrace t = expand_m_method(g, 1);
  CHECK(t.added == std::vector<NodeId>{1, 2, 3});
  CHECK(t.node_set() == NodeSet{1, 2, 3});
  CHECK(t.final_m.value() == Rational::of(3, 1));
  // from the other side it finds the mirror triangle
  CHECK(expand_m_method(g, 5).node_set() == NodeSet{4, 5, 6});
  CHECK(expand_m_method(g, 4).node_set() == NodeSet{4, 5, 6});
}

TEST_CASE("greedy M ties break toward the smaller node", "[expansion]") {
  // from seed 1 both triangle mates give M = 1/2; node 2 must win
  Graph g = two_triangles();
  ExpansionTrace t = expand_m_method(g, 1);
  REQUIRE(t.added.size() >= 2);
  CHECK(t.added[1] == 2);
}

TEST_CASE("greedy R expansion on K4 with a pendant", "[expansion]") {
  Graph g = k4_pendant();
  ExpansionTrace t = expand_r_method(g, 1);
  CHECK(t.node_set() == NodeSet{1, 2, 3, 4});
  // {1,2,3,4} has boundary {4}; edges at 4: 1,2,3 inside + 5 outside -> R=3/4
  CHECK(t.final_r == Rational::of(3, 4));
  CHECK(local_modularity_r(g, t.node_set()) == Rational::of(3, 4));
}

TEST_CASE("unknown seeds are rejected", "[expansion]") {
  Graph g = two_triangles();
  CHECK_THROWS_AS(expand_m_method(g, 99), std::invalid_argument);
  CHECK_THROWS_AS(expand_r_method(g, 99), std::invalid_argument);
}

TEST_CASE("isolated seed stays alone", "[expansion]") {
  Graph g = Graph::from_edges({{1, 2}}, {9});
  CHECK(expand_m_method(g, 9).added == std::vector<NodeId>{9});
  CHECK(expand_r_method(g, 9).added == std::vector<NodeId>{9});
}

TEST_CASE("greedy M matches the reference on random graphs", "[expansion]") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    NodeId n = 4 + static_cast<NodeId>(testgen::below(rng, 10));
    Graph g = testgen::er_graph(n, 3, 10, rng);
    NodeId seed = static_cast<NodeId>(testgen::below(rng, static_cast<std::uint64_t>(n)));
    REQUIRE(expand_m_method(g, seed).added == brute::greedy_m(g, seed));
  }
}

TEST_CASE("greedy R matches the reference on random graphs", "[expansion]") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 120; ++trial) {
    NodeId n = 4 + static_cast<NodeId>(testgen::below(rng, 10));
    Graph g = testgen::er_graph(n, 3, 10, rng);
    NodeId seed = static_cast<NodeId>(testgen::below(rng, static_cast<std::uint64_t>(n)));
    REQUIRE(expand_r_method(g, seed).added == brute::greedy_r(g, seed));
  }
}

TEST_CASE("expansions are deterministic", "[expansion]") {
  std::mt19937_64 rng(33);
  Graph g = testgen::er_graph(12, 3, 10, rng);
  for (NodeId seed : g.nodes()) {
    CHECK(expand_m_method(g, seed).added == expand_m_method(g, seed).added);
    CHECK(expand_r_method(g, seed).added == expand_r_method(g, seed).added);
  }
}

TEST_CASE("expanded community is invariant under order-preserving relabeling", "[expansion]") {
  // shifting ids by a constant keeps the id order, so traces map exactly
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = testgen::er_graph(9, 3, 10, rng);
    std::map<NodeId, NodeId> pi;
    for (NodeId v : g.nodes()) pi[v] = v + 100;
    Graph h = relabeled(g, pi);
    for (NodeId seed : g.nodes()) {
      ExpansionTrace tg = expand_m_method(g, seed);
      ExpansionTrace th = expand_m_method(h, pi.at(seed));
      std::vector<NodeId> mapped;
      for (NodeId v : tg.added) mapped.push_back(pi.at(v));
      CHECK(th.added == mapped);
    }
  }
}

TEST_CASE("edge presentation order never changes the result", "[expansion]") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = testgen::er_graph(9, 1, 2, rng);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u : g.nodes())
      for (NodeId v : g.neighbors(u))
        if (u < v) edges.emplace_back(u, v);
    // shuffle and flip some of the pairs, then rebuild
    for (std::size_t i = 0; i < edges.size(); ++i) {
      std::size_t j = i + static_cast<std::size_t>(
                              testgen::below(rng, static_cast<std::uint64_t>(edges.size() - i)));
      std::swap(edges[i], edges[j]);
      if (testgen::below(rng, 2)) std::swap(edges[i].first, edges[i].second);
    }
    std::vector<NodeId> isolated;
    for (NodeId u : g.nodes())
      if (g.neighbors(u).empty()) isolated.push_back(u);
    Graph h = Graph::from_edges(edges, isolated);
    REQUIRE(g == h);
    for (NodeId seed : g.nodes()) {
      REQUIRE(expand_m_method(g, seed).added == expand_m_method(h, seed).added);
      REQUIRE(expand_r_method(g, seed).added == expand_r_method(h, seed).added);
    }
  }
}

TEST_CASE("first-of-candidates selector", "[expansion]") {
  Graph g = two_triangles();
  PotentialNodes pn = potential_nodes(g, {1}, 10);
  CHECK(select_first_of_pn(pn) == 2);
  CHECK_THROWS_AS(select_first_of_pn(PotentialNodes{}), std::invalid_argument);
}
