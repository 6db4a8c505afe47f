#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "comgpt/encoding.hpp"
#include "comgpt/expansion.hpp"
#include "comgpt/graph.hpp"
#include "comgpt/hash.hpp"
#include "comgpt/oracle.hpp"
#include "comgpt/prompts.hpp"
#include "comgpt/scoring.hpp"

namespace comgpt {

struct PipelineConfig {
  std::size_t k = 10;
  int runs_per_seed = 2;
  // Expansion stops once duplicate_count > (num/den) * |members|.
  std::int64_t duplicate_limit_num = 1;
  std::int64_t duplicate_limit_den = 3;
  std::size_t max_community_size = 200;
  std::string backend_id = "mock";
  PromptVariant prompt_variant = PromptVariant::NSG;
  std::uint64_t rng_seed = 0;
  bool supplementation_enabled = true;
  bool topology_only_encoding = false;

  void validate() const {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (runs_per_seed < 1) throw std::invalid_argument("runs_per_seed must be >= 1");
    if (duplicate_limit_num < 1 || duplicate_limit_den < duplicate_limit_num)
      throw std::invalid_argument("duplicate fraction limit must be in (0, 1]");
    if (max_community_size < 1) throw std::invalid_argument("max_community_size must be >= 1");
  }
};

struct PipelineEvent {
  enum class Kind { Select, Supplement, Snapshot, Terminate };

  Kind kind = Kind::Select;
  std::string decision;  // "selected", "null", "parse-failure", a score, or a reason
  NodeId node = -1;
  bool fallback = false;
  std::string text_hash;
  int attempts = 0;

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::Select: return "select";
      case Kind::Supplement: return "supplement";
      case Kind::Snapshot: return "snapshot";
      case Kind::Terminate: return "terminate";
    }
    return "?";
  }
};

enum class TerminationReason { NullSupplement, SupplementationDisabled, DuplicateGuard, SizeCap };

inline const char* to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::NullSupplement: return "null-supplement";
    case TerminationReason::SupplementationDisabled: return "supplementation-disabled";
    case TerminationReason::DuplicateGuard: return "duplicate-guard";
    case TerminationReason::SizeCap: return "size-cap";
  }
  return "?";
}

/// Ordered append trace of one run. Duplicate appends are kept in members
/// and collapsed in node_set; the gap between the two drives the
/// duplicate guard.
struct CommunityTrace {
  NodeId seed = 0;
  std::vector<NodeId> members;
  NodeSet node_set;
  std::vector<PipelineEvent> events;
  std::optional<TerminationReason> terminated_by;

  std::size_t duplicate_count() const { return members.size() - node_set.size(); }

  std::size_t fallback_count() const {
    std::size_t n = 0;
    for (const auto& e : events)
      if (e.fallback) ++n;
    return n;
  }
};

/// Community snapshots taken whenever the candidate list emptied; the
/// final answer is the best of these.
struct CandidateSnapshot {
  NodeSet community;
  ModularityScore score;
};

using CandidateSet = std::vector<CandidateSnapshot>;

/// Transport failure with the partial trace attached.
class PipelineTransportError : public TransportError {
 public:
  PipelineTransportError(const std::string& what, CommunityTrace partial)
      : TransportError(what), partial_trace(std::move(partial)) {}

  CommunityTrace partial_trace;
};

/// Index of the max-M snapshot; infinity beats every finite score and
/// ties resolve to the earliest snapshot.
inline std::size_t finalize_index(const CandidateSet& cands) {
  if (cands.empty()) throw std::invalid_argument("empty candidate set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (ModularityScore::compare(cands[i].score, cands[best].score) > 0) best = i;
  return best;
}

inline NodeSet finalize(const CandidateSet& cands) { return cands[finalize_index(cands)].community; }

/// The k first-order neighbors with the highest resulting M, with no
/// positive-gain filter: supplementation offers them even when every gain
/// is negative.
inline PotentialNodes supplementation_pn(const Graph& g, const NodeSet& c, std::size_t k) {
  return detail::scored_neighbors(g, c, k, /*require_positive_gain=*/false);
}

struct RunOutcome {
  CommunityTrace trace;
  CandidateSet cands;
  NodeSet community;
  ModularityScore score;
  std::size_t chosen_snapshot = 0;
};

namespace detail {

inline GraphText encode_for_pipeline(const PipelineConfig& cfg, const Graph& local,
                                     const NodeSet& c, const std::vector<NodeId>& outside) {
  if (cfg.topology_only_encoding) return encode_topology_only(local, c, outside);
  return encode_graph_text(local, c, outside);
}

inline bool guard_triggered(const PipelineConfig& cfg, const CommunityTrace& trace) {
  auto dup = static_cast<std::int64_t>(trace.duplicate_count());
  auto total = static_cast<std::int64_t>(trace.members.size());
  return dup * cfg.duplicate_limit_den > cfg.duplicate_limit_num * total;
}

}  // namespace detail

/// One expansion run from one seed: grow by oracle selection while
/// positive-gain candidates exist, snapshot on exhaustion, ask the oracle
/// to supplement, and finish with the best snapshot.
inline RunOutcome run_comgpt(const Graph& g, NodeId seed, const PipelineConfig& cfg,
                             Oracle& oracle) {
  cfg.validate();
  if (!g.has_node(seed)) throw std::invalid_argument("unknown seed " + std::to_string(seed));

  RunOutcome out;
  CommunityTrace& trace = out.trace;
  trace.seed = seed;
  trace.members.push_back(seed);
  trace.node_set.insert(seed);

  auto snapshot = [&] {
    out.cands.push_back(CandidateSnapshot{trace.node_set, local_modularity_m(g, trace.node_set)});
    PipelineEvent ev;
    ev.kind = PipelineEvent::Kind::Snapshot;
    ev.decision = out.cands.back().score.str();
    trace.events.push_back(ev);
  };

  auto terminate = [&](TerminationReason reason) {
    trace.terminated_by = reason;
    PipelineEvent ev;
    ev.kind = PipelineEvent::Kind::Terminate;
    ev.decision = to_string(reason);
    trace.events.push_back(ev);
  };

  // Returns true when a guard ended the run. Guards snapshot the current
  // community before terminating.
  auto append_and_check = [&](NodeId v) {
    trace.members.push_back(v);
    trace.node_set.insert(v);
    if (detail::guard_triggered(cfg, trace)) {
      snapshot();
      terminate(TerminationReason::DuplicateGuard);
      return true;
    }
    if (trace.node_set.size() >= cfg.max_community_size) {
      snapshot();
      terminate(TerminationReason::SizeCap);
      return true;
    }
    return false;
  };

  while (true) {
    PotentialNodes pn = potential_nodes(g, trace.node_set, cfg.k);
    while (!pn.empty()) {
      NodeSet local_nodes = trace.node_set;
      for (const auto& e : pn.entries) local_nodes.insert(e.node);
      Graph local = induced_subgraph(g, local_nodes);
      GraphText gtxt = detail::encode_for_pipeline(cfg, local, trace.node_set, pn.node_list());

      OracleDecision decision;
      try {
        decision = oracle.select(OracleContext{g, local, trace.node_set, pn, gtxt});
      } catch (const BudgetExhausted&) {
        throw;
      } catch (const TransportError& e) {
        throw PipelineTransportError(e.what(), std::move(trace));
      }

      PipelineEvent ev;
      ev.kind = PipelineEvent::Kind::Select;
      ev.text_hash = fnv1a64_hex(gtxt.full_text);
      ev.attempts = decision.attempts;
      NodeId v;
      if (decision.is_selected()) {
        v = decision.node;
        ev.decision = "selected";
      } else {
        // Terminal parse failure: fall back to the deterministic head of
        // PN so long experiments keep moving.
        v = select_first_of_pn(pn);
        ev.decision = "parse-failure";
        ev.fallback = true;
      }
      ev.node = v;
      trace.events.push_back(ev);
      if (append_and_check(v)) {
        out.chosen_snapshot = finalize_index(out.cands);
        out.community = out.cands[out.chosen_snapshot].community;
        out.score = out.cands[out.chosen_snapshot].score;
        return out;
      }
      pn = potential_nodes(g, trace.node_set, cfg.k);
    }

    snapshot();

    if (!cfg.supplementation_enabled) {
      terminate(TerminationReason::SupplementationDisabled);
      break;
    }

    NodeSet n2 = first_and_second_order_neighbors(g, trace.node_set);
    PotentialNodes forced = supplementation_pn(g, trace.node_set, cfg.k);
    NodeSet local_nodes = trace.node_set;
    local_nodes.insert(n2.begin(), n2.end());
    Graph local = induced_subgraph(g, local_nodes);
    GraphText gtxt = detail::encode_for_pipeline(cfg, local, trace.node_set, forced.node_list());

    OracleDecision decision;
    try {
      decision = oracle.supplement(OracleContext{g, local, trace.node_set, forced, gtxt});
    } catch (const BudgetExhausted&) {
      throw;
    } catch (const TransportError& e) {
      throw PipelineTransportError(e.what(), std::move(trace));
    }

    PipelineEvent ev;
    ev.kind = PipelineEvent::Kind::Supplement;
    ev.text_hash = fnv1a64_hex(gtxt.full_text);
    ev.attempts = decision.attempts;
    if (decision.is_selected()) {
      ev.decision = "selected";
      ev.node = decision.node;
      trace.events.push_back(ev);
      if (append_and_check(decision.node)) break;
    } else {
      ev.decision = "null";
      trace.events.push_back(ev);
      terminate(TerminationReason::NullSupplement);
      break;
    }
  }

  out.chosen_snapshot = finalize_index(out.cands);
  out.community = out.cands[out.chosen_snapshot].community;
  out.score = out.cands[out.chosen_snapshot].score;
  return out;
}

struct SeedRunReport {
  int run_index = 0;
  std::optional<RunOutcome> outcome;
  std::string error;
  std::optional<CommunityTrace> partial_trace;
  bool budget_exhausted = false;
};

/// Independent repeats of run_comgpt; a failed run is recorded and does
/// not disturb the others.
inline std::vector<SeedRunReport> run_seed(const Graph& g, NodeId seed, const PipelineConfig& cfg,
                                           Oracle& oracle) {
  std::vector<SeedRunReport> reports;
  for (int run = 0; run < cfg.runs_per_seed; ++run) {
    SeedRunReport report;
    report.run_index = run;
    try {
      report.outcome = run_comgpt(g, seed, cfg, oracle);
    } catch (const BudgetExhausted& e) {
      report.error = e.what();
      report.budget_exhausted = true;
    } catch (const PipelineTransportError& e) {
      report.error = e.what();
      report.partial_trace = e.partial_trace;
    } catch (const TransportError& e) {
      report.error = e.what();
    }
    reports.push_back(std::move(report));
    if (reports.back().budget_exhausted) break;
  }
  return reports;
}

}  // namespace comgpt
