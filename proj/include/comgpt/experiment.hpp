#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "comgpt/encoding.hpp"
#include "comgpt/evaluation.hpp"
#include "comgpt/expansion.hpp"
#include "comgpt/graph.hpp"
#include "comgpt/oracle.hpp"
#include "comgpt/pipeline.hpp"
#include "comgpt/prompts.hpp"

namespace comgpt {

enum class Method { Comgpt, MMethod, RMethod, Method1, Method2, Method3, Method4 };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Comgpt: return "comgpt";
    case Method::MMethod: return "m";
    case Method::RMethod: return "r";
    case Method::Method1: return "method1";
    case Method::Method2: return "method2";
    case Method::Method3: return "method3";
    case Method::Method4: return "method4";
  }
  return "?";
}

inline Method method_from_string(const std::string& name) {
  if (name == "comgpt") return Method::Comgpt;
  if (name == "m" || name == "m-method") return Method::MMethod;
  if (name == "r" || name == "r-method") return Method::RMethod;
  if (name == "method1") return Method::Method1;
  if (name == "method2") return Method::Method2;
  if (name == "method3") return Method::Method3;
  if (name == "method4") return Method::Method4;
  throw std::invalid_argument("unknown method '" + name + "'");
}

inline bool method_uses_oracle(Method m) {
  return m != Method::MMethod && m != Method::RMethod;
}

struct SeedSpec {
  enum class Mode { All, Sample, Explicit };

  Mode mode = Mode::All;
  std::size_t sample_size = 0;
  std::vector<NodeId> explicit_seeds;
};

/// Accepts "all", "sample:<n>", or a comma-separated node list.
inline SeedSpec parse_seed_spec(const std::string& text) {
  SeedSpec spec;
  if (text == "all") return spec;
  if (text.rfind("sample:", 0) == 0) {
    spec.mode = SeedSpec::Mode::Sample;
    std::size_t n = 0;
    try {
      n = std::stoull(text.substr(7));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad seed spec '" + text + "'");
    }
    if (n == 0) throw std::invalid_argument("sample size must be positive");
    spec.sample_size = n;
    return spec;
  }
  spec.mode = SeedSpec::Mode::Explicit;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    NodeId v = 0;
    if (!detail::parse_node_id(item, v)) throw std::invalid_argument("bad seed spec '" + text + "'");
    spec.explicit_seeds.push_back(v);
  }
  if (spec.explicit_seeds.empty()) throw std::invalid_argument("bad seed spec '" + text + "'");
  return spec;
}

namespace detail {

// Unbiased residue so sampling does not depend on a library's
// distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  limit -= limit % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace detail

/// Draw n distinct seeds from the pool, reproducibly for a given
/// rng_seed on any platform.
inline std::vector<NodeId> sample_seeds(const std::vector<NodeId>& pool, std::size_t n,
                                        std::uint64_t rng_seed) {
  if (n > pool.size())
    throw std::invalid_argument("cannot sample " + std::to_string(n) + " seeds from a pool of " +
                                std::to_string(pool.size()));
  std::vector<NodeId> shuffled = pool;
  std::mt19937_64 rng(rng_seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(
                            detail::uniform_below(rng, static_cast<std::uint64_t>(shuffled.size() - i)));
    std::swap(shuffled[i], shuffled[j]);
  }
  shuffled.resize(n);
  return shuffled;
}

struct ExperimentConfig {
  std::string dataset = "dataset";
  std::string graph_path;
  std::string communities_path;
  SeedSpec seeds;
  Method method = Method::Comgpt;
  PromptVariant prompt_variant = PromptVariant::NSG;
  std::vector<std::size_t> k_values = {10};
  int runs_per_seed = 2;
  std::size_t max_community_size = 200;
  std::string backend_id = "mock";
  std::string model = "gpt-3.5-turbo-0125";
  std::string base_url = "https://api.openai.com";
  double temperature = 0.0;
  std::string cache_dir;
  std::uint64_t max_calls = 0;
  std::string out_dir = "out";
  std::uint64_t rng_seed = 1;

  void validate() const {
    if (graph_path.empty()) throw std::invalid_argument("graph_path is required");
    if (communities_path.empty()) throw std::invalid_argument("communities_path is required");
    if (k_values.empty()) throw std::invalid_argument("at least one k value is required");
    for (std::size_t k : k_values)
      if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (runs_per_seed < 1) throw std::invalid_argument("runs_per_seed must be >= 1");
    if (prompt_variant == PromptVariant::NSU)
      throw std::invalid_argument("nsu is the supplementation prompt, not a selection regime");
    if (backend_id != "mock" && backend_id != "api")
      throw std::invalid_argument("unknown backend '" + backend_id + "'");
    if (out_dir.empty()) throw std::invalid_argument("out_dir is required");
  }
};

/// The selection regime actually sent: the zero-shot ablation strips the
/// guidance no matter what was configured.
inline PromptVariant effective_prompt_variant(const ExperimentConfig& cfg) {
  if (cfg.method == Method::Method3) return PromptVariant::ZeroShot;
  return cfg.prompt_variant;
}

inline PipelineConfig make_pipeline_config(const ExperimentConfig& cfg, std::size_t k) {
  PipelineConfig pc;
  pc.k = k;
  pc.runs_per_seed = cfg.runs_per_seed;
  pc.max_community_size = cfg.max_community_size;
  pc.backend_id = cfg.backend_id;
  pc.prompt_variant = effective_prompt_variant(cfg);
  pc.rng_seed = cfg.rng_seed;
  pc.supplementation_enabled =
      cfg.method != Method::Method1 && cfg.method != Method::Method4;
  pc.topology_only_encoding = cfg.method == Method::Method2;
  return pc;
}

using OracleFactory = std::function<std::shared_ptr<Oracle>(const ExperimentConfig&)>;

/// Covers the offline backends; the CLI supplies a factory that also
/// knows how to build the HTTP one.
inline std::shared_ptr<Oracle> default_oracle_factory(const ExperimentConfig& cfg) {
  if (cfg.backend_id == "mock") return std::make_shared<MockOracle>();
  throw std::invalid_argument("backend '" + cfg.backend_id +
                              "' needs an oracle factory that can build it");
}

struct ResultRow {
  std::string dataset;
  std::string method;
  std::string prompt;
  std::size_t k = 0;
  NodeId seed = 0;
  int run = 0;
  std::size_t detected_size = 0;
  double fscore = 0.0;
  double jaccard = 0.0;
  std::size_t duplicates = 0;
  std::size_t fallbacks = 0;
  std::int64_t wall_ms = 0;
  std::string score;  // summary.json only, not a CSV column
};

struct KAggregate {
  std::size_t k = 0;
  EvaluationSummary summary;
};

struct ExperimentReport {
  std::vector<NodeId> seeds;
  std::vector<ResultRow> rows;
  std::vector<KAggregate> aggregates;
  std::vector<std::string> errors;
  bool budget_exhausted = false;
};

namespace detail {

inline std::vector<NodeId> choose_seeds(const Graph& g, const GroundTruth& gt,
                                        const ExperimentConfig& cfg) {
  std::vector<NodeId> pool;
  for (NodeId v : gt.member_pool()) {
    if (!g.has_node(v))
      throw std::invalid_argument("ground-truth node " + std::to_string(v) +
                                  " is missing from the graph");
    pool.push_back(v);
  }
  if (pool.empty()) throw std::invalid_argument("ground truth has no members");
  switch (cfg.seeds.mode) {
    case SeedSpec::Mode::All:
      return pool;
    case SeedSpec::Mode::Sample:
      return sample_seeds(pool, cfg.seeds.sample_size, cfg.rng_seed);
    case SeedSpec::Mode::Explicit: {
      NodeSet pool_set(pool.begin(), pool.end());
      for (NodeId v : cfg.seeds.explicit_seeds) {
        if (!g.has_node(v))
          throw std::invalid_argument("seed " + std::to_string(v) + " is not in the graph");
        if (!pool_set.count(v))
          throw std::invalid_argument("seed " + std::to_string(v) +
                                      " is in no ground-truth community");
      }
      return cfg.seeds.explicit_seeds;
    }
  }
  throw std::logic_error("unreachable");
}

inline std::string format_metric(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

inline void write_event_line(std::ostream& os, NodeId seed, int run, std::size_t k,
                             const PipelineEvent& ev) {
  nlohmann::json line{{"seed", seed},
                      {"run", run},
                      {"k", k},
                      {"kind", PipelineEvent::kind_name(ev.kind)},
                      {"decision", ev.decision},
                      {"node", ev.node},
                      {"fallback", ev.fallback},
                      {"text_hash", ev.text_hash},
                      {"attempts", ev.attempts}};
  os << line.dump() << "\n";
}

}  // namespace detail

inline void write_report_csv(const std::filesystem::path& path,
                             const std::vector<ResultRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "dataset,method,prompt,k,seed,run,detected_size,fscore,jaccard,duplicates,fallbacks,"
        "wall_ms\n";
  for (const auto& r : rows) {
    os << r.dataset << ',' << r.method << ',' << r.prompt << ',' << r.k << ',' << r.seed << ','
       << r.run << ',' << r.detected_size << ',' << detail::format_metric(r.fscore) << ','
       << detail::format_metric(r.jaccard) << ',' << r.duplicates << ',' << r.fallbacks << ','
       << r.wall_ms << "\n";
  }
}

inline nlohmann::json summary_json(const ExperimentConfig& cfg, const ExperimentReport& report) {
  nlohmann::json j;
  j["dataset"] = cfg.dataset;
  j["method"] = to_string(cfg.method);
  j["prompt"] = to_string(effective_prompt_variant(cfg));
  j["encoding_version"] = kEncodingVersion;
  j["prompt_version"] = kPromptVersion;
  j["config"] = {{"graph", cfg.graph_path},
                 {"communities", cfg.communities_path},
                 {"k_values", cfg.k_values},
                 {"runs_per_seed", cfg.runs_per_seed},
                 {"max_community_size", cfg.max_community_size},
                 {"backend", cfg.backend_id},
                 {"model", cfg.model},
                 {"temperature", cfg.temperature},
                 {"rng_seed", cfg.rng_seed},
                 {"max_calls", cfg.max_calls}};
  j["seeds"] = report.seeds;
  j["budget_exhausted"] = report.budget_exhausted;
  j["errors"] = report.errors;

  nlohmann::json aggregates = nlohmann::json::array();
  for (const auto& agg : report.aggregates) {
    nlohmann::json per_seed = nlohmann::json::array();
    for (const auto& row : agg.summary.per_seed)
      per_seed.push_back({{"seed", row.seed},
                          {"runs", row.runs},
                          {"mean_fscore", row.mean_fscore},
                          {"mean_jaccard", row.mean_jaccard}});
    aggregates.push_back({{"k", agg.k},
                          {"total_runs", agg.summary.total_runs},
                          {"mean_fscore", agg.summary.mean_fscore},
                          {"mean_jaccard", agg.summary.mean_jaccard},
                          {"per_seed", per_seed}});
  }
  j["aggregate"] = aggregates;

  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : report.rows)
    runs.push_back({{"k", r.k},
                    {"seed", r.seed},
                    {"run", r.run},
                    {"detected_size", r.detected_size},
                    {"fscore", r.fscore},
                    {"jaccard", r.jaccard},
                    {"duplicates", r.duplicates},
                    {"fallbacks", r.fallbacks},
                    {"score", r.score}});
  j["runs"] = runs;
  return j;
}

/// Full harness pass: load data, pick seeds, expand each one per
/// configured k, score against merged truth, and leave report.csv,
/// summary.json, and events.jsonl in out_dir. Budget exhaustion stops
/// dispatch cleanly and keeps everything finished so far.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                       const OracleFactory& factory = default_oracle_factory) {
  cfg.validate();

  std::ifstream graph_in(cfg.graph_path);
  if (!graph_in) throw std::runtime_error("cannot open " + cfg.graph_path);
  Graph g = load_edge_list(graph_in).graph;
  std::ifstream comm_in(cfg.communities_path);
  if (!comm_in) throw std::runtime_error("cannot open " + cfg.communities_path);
  GroundTruth gt = load_communities(comm_in);

  ExperimentReport report;
  report.seeds = detail::choose_seeds(g, gt, cfg);

  std::shared_ptr<Oracle> oracle;
  if (cfg.method == Method::Method1)
    oracle = std::make_shared<FirstOfPnOracle>();
  else if (method_uses_oracle(cfg.method))
    oracle = factory(cfg);

  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream events(std::filesystem::path(cfg.out_dir) / "events.jsonl");
  if (!events) throw std::runtime_error("cannot write events.jsonl in " + cfg.out_dir);

  std::vector<std::vector<SeedResult>> scored_per_k(cfg.k_values.size());

  for (std::size_t ki = 0; ki < cfg.k_values.size() && !report.budget_exhausted; ++ki) {
    std::size_t k = cfg.k_values[ki];
    PipelineConfig pc = make_pipeline_config(cfg, k);
    for (NodeId seed : report.seeds) {
      if (report.budget_exhausted) break;

      auto record = [&](int run, const NodeSet& detected, const ModularityScore* score,
                        std::size_t duplicates, std::size_t fallbacks, std::int64_t wall_ms) {
        ResultRow row;
        row.dataset = cfg.dataset;
        row.method = to_string(cfg.method);
        row.prompt = method_uses_oracle(cfg.method) && cfg.method != Method::Method1
                         ? to_string(effective_prompt_variant(cfg))
                         : "-";
        row.k = k;
        row.seed = seed;
        row.run = run;
        row.detected_size = detected.size();
        SeedResult sr = score_detection(gt, seed, run, detected);
        row.fscore = sr.fscore;
        row.jaccard = sr.jaccard;
        row.duplicates = duplicates;
        row.fallbacks = fallbacks;
        row.wall_ms = wall_ms;
        if (score) row.score = score->str();
        report.rows.push_back(row);
        scored_per_k[ki].push_back(std::move(sr));
      };

      if (!method_uses_oracle(cfg.method)) {
        auto start = std::chrono::steady_clock::now();
        ExpansionTrace trace = cfg.method == Method::MMethod ? expand_m_method(g, seed)
                                                             : expand_r_method(g, seed);
        auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        NodeSet detected = trace.node_set();
        for (int run = 0; run < cfg.runs_per_seed; ++run)
          record(run, detected, nullptr, 0, 0, wall);
        continue;
      }

      for (int run = 0; run < cfg.runs_per_seed; ++run) {
        auto start = std::chrono::steady_clock::now();
        try {
          RunOutcome out = run_comgpt(g, seed, pc, *oracle);
          auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
          for (const auto& ev : out.trace.events) detail::write_event_line(events, seed, run, k, ev);
          record(run, out.community, &out.score, out.trace.duplicate_count(),
                 out.trace.fallback_count(), wall);
        } catch (const BudgetExhausted& e) {
          report.errors.push_back("seed " + std::to_string(seed) + " run " + std::to_string(run) +
                                  ": " + e.what());
          report.budget_exhausted = true;
          break;
        } catch (const PipelineTransportError& e) {
          for (const auto& ev : e.partial_trace.events)
            detail::write_event_line(events, seed, run, k, ev);
          report.errors.push_back("seed " + std::to_string(seed) + " run " + std::to_string(run) +
                                  ": " + e.what());
        }
      }
    }
    if (!scored_per_k[ki].empty())
      report.aggregates.push_back(KAggregate{k, aggregate(scored_per_k[ki])});
  }

  write_report_csv(std::filesystem::path(cfg.out_dir) / "report.csv", report.rows);
  std::ofstream summary(std::filesystem::path(cfg.out_dir) / "summary.json");
  if (!summary) throw std::runtime_error("cannot write summary.json in " + cfg.out_dir);
  summary << summary_json(cfg, report).dump(2) << "\n";
  return report;
}

}  // namespace comgpt
