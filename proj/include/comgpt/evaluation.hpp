#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "comgpt/graph.hpp"

namespace comgpt {

/// Union of every ground-truth community containing the seed. Overlapping
/// truths are merged so one detected set is judged against one target.
inline NodeSet merged_truth(const GroundTruth& gt, NodeId seed) {
  NodeSet merged;
  for (std::size_t i : gt.communities_of(seed)) {
    const NodeSet& community = gt.communities()[i];
    merged.insert(community.begin(), community.end());
  }
  if (merged.empty())
    throw std::invalid_argument("seed " + std::to_string(seed) +
                                " is in no ground-truth community");
  return merged;
}

inline std::size_t intersection_size(const NodeSet& a, const NodeSet& b) {
  const NodeSet& small = a.size() <= b.size() ? a : b;
  const NodeSet& large = a.size() <= b.size() ? b : a;
  std::size_t n = 0;
  for (NodeId v : small)
    if (large.count(v)) ++n;
  return n;
}

inline double fscore(const NodeSet& detected, const NodeSet& truth) {
  if (detected.empty()) throw std::invalid_argument("empty detected community");
  if (truth.empty()) throw std::invalid_argument("empty truth community");
  double inter = static_cast<double>(intersection_size(detected, truth));
  return 2.0 * inter / static_cast<double>(detected.size() + truth.size());
}

inline double jaccard(const NodeSet& detected, const NodeSet& truth) {
  if (detected.empty()) throw std::invalid_argument("empty detected community");
  if (truth.empty()) throw std::invalid_argument("empty truth community");
  std::size_t inter = intersection_size(detected, truth);
  std::size_t uni = detected.size() + truth.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

/// One scored (seed, run) pair.
struct SeedResult {
  NodeId seed = 0;
  int run = 0;
  NodeSet detected;
  double fscore = 0.0;
  double jaccard = 0.0;
};

inline SeedResult score_detection(const GroundTruth& gt, NodeId seed, int run,
                                  const NodeSet& detected) {
  NodeSet truth = merged_truth(gt, seed);
  SeedResult r;
  r.seed = seed;
  r.run = run;
  r.detected = detected;
  r.fscore = fscore(detected, truth);
  r.jaccard = jaccard(detected, truth);
  return r;
}

struct SeedAverages {
  NodeId seed = 0;
  int runs = 0;
  double mean_fscore = 0.0;
  double mean_jaccard = 0.0;
};

/// Unweighted means over every (seed, run) pair plus a per-seed table.
struct EvaluationSummary {
  int total_runs = 0;
  double mean_fscore = 0.0;
  double mean_jaccard = 0.0;
  std::vector<SeedAverages> per_seed;
};

inline EvaluationSummary aggregate(const std::vector<SeedResult>& results) {
  EvaluationSummary s;
  if (results.empty()) return s;
  std::map<NodeId, SeedAverages> by_seed;
  double f_sum = 0.0;
  double j_sum = 0.0;
  for (const auto& r : results) {
    f_sum += r.fscore;
    j_sum += r.jaccard;
    auto& row = by_seed[r.seed];
    row.seed = r.seed;
    row.runs += 1;
    row.mean_fscore += r.fscore;
    row.mean_jaccard += r.jaccard;
  }
  s.total_runs = static_cast<int>(results.size());
  s.mean_fscore = f_sum / static_cast<double>(results.size());
  s.mean_jaccard = j_sum / static_cast<double>(results.size());
  for (auto& [seed, row] : by_seed) {
    row.mean_fscore /= static_cast<double>(row.runs);
    row.mean_jaccard /= static_cast<double>(row.runs);
    s.per_seed.push_back(row);
  }
  return s;
}

}  // namespace comgpt
