// Walks the offline pipeline over a pair of bridged triangles and prints
// what each seed grows into.

#include <iostream>

#include "comgpt/comgpt.hpp"

int main() {
  using namespace comgpt;

  Graph g = Graph::from_edges({{1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {5, 6}});
  GroundTruth gt({{1, 2, 3}, {4, 5, 6}});
  MockOracle oracle;
  PipelineConfig cfg;

  std::cout << "seed  community        M      F\n";
  for (NodeId seed : g.nodes()) {
    RunOutcome out = run_comgpt(g, seed, cfg, oracle);
    SeedResult scored = score_detection(gt, seed, 0, out.community);
    std::cout << seed << "     {";
    bool first = true;
    for (NodeId v : out.community) {
      if (!first) std::cout << ", ";
      std::cout << v;
      first = false;
    }
    std::cout << "}      " << out.score.str() << "      " << scored.fscore << "\n";
  }
  return 0;
}
