// Command-line front end: run experiments, preview encodings, score sets.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "comgpt/comgpt.hpp"
#include "comgpt/http_backend.hpp"

namespace {

constexpr const char* kCliVersion = "1.0.0";

std::vector<comgpt::NodeId> parse_node_list(const std::string& text) {
  std::vector<comgpt::NodeId> nodes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    comgpt::NodeId v = 0;
    if (!comgpt::detail::parse_node_id(item, v))
      throw std::invalid_argument("bad node list '" + text + "'");
    nodes.push_back(v);
  }
  if (nodes.empty()) throw std::invalid_argument("empty node list");
  return nodes;
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    comgpt::NodeId v = 0;
    if (!comgpt::detail::parse_node_id(item, v) || v < 1)
      throw std::invalid_argument("bad k list '" + text + "'");
    ks.push_back(static_cast<std::size_t>(v));
  }
  if (ks.empty()) throw std::invalid_argument("empty k list");
  return ks;
}

comgpt::Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return comgpt::load_edge_list(in).graph;
}

/// Builds the chat-backend chain for live runs: HTTP transport, then the
/// call budget, then the response cache so hits cost nothing. The bearer
/// credential is read from COMGPT_API_KEY (or OPENAI_API_KEY); there is
/// deliberately no flag for it.
std::shared_ptr<comgpt::Oracle> make_api_oracle(const comgpt::ExperimentConfig& cfg) {
  comgpt::ApiConfig api;
  api.base_url = cfg.base_url;
  api.model = cfg.model;
  api.temperature = cfg.temperature;
  auto http = std::make_shared<comgpt::HttpChatBackend>(api);
  if (!http->has_credential())
    std::cerr << "warning: no credential in COMGPT_API_KEY or OPENAI_API_KEY; "
                 "sending unauthenticated requests\n";
  std::shared_ptr<comgpt::ChatBackend> backend = http;
  backend = std::make_shared<comgpt::BudgetedBackend>(
      backend, std::make_shared<comgpt::CallBudget>(static_cast<std::int64_t>(cfg.max_calls)));
  if (!cfg.cache_dir.empty())
    backend = std::make_shared<comgpt::CachingBackend>(
        backend, std::make_shared<comgpt::ResponseCache>(cfg.cache_dir), cfg.model);
  return std::make_shared<comgpt::ApiOracle>(
      backend, comgpt::make_selection_bundle(comgpt::effective_prompt_variant(cfg)));
}

std::shared_ptr<comgpt::Oracle> oracle_factory(const comgpt::ExperimentConfig& cfg) {
  if (cfg.backend_id == "api") return make_api_oracle(cfg);
  return comgpt::default_oracle_factory(cfg);
}

int run_command(const comgpt::ExperimentConfig& cfg) {
  comgpt::ExperimentReport report = comgpt::run_experiment(cfg, oracle_factory);
  std::cout << "dataset=" << cfg.dataset << " method=" << to_string(cfg.method)
            << " prompt=" << to_string(comgpt::effective_prompt_variant(cfg)) << "\n";
  std::cout << "seeds=" << report.seeds.size() << " rows=" << report.rows.size() << "\n";
  for (const auto& agg : report.aggregates) {
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(6);
    line << "k=" << agg.k << " runs=" << agg.summary.total_runs
         << " mean_f=" << agg.summary.mean_fscore << " mean_j=" << agg.summary.mean_jaccard;
    std::cout << line.str() << "\n";
  }
  std::cout << "wrote " << cfg.out_dir << "/report.csv, summary.json, events.jsonl\n";
  for (const auto& err : report.errors) std::cerr << "error: " << err << "\n";
  if (report.budget_exhausted) std::cerr << "call budget exhausted; results are partial\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local community detection with a language-model oracle"};
  app.set_version_flag("--version", std::string("comgpt ") + kCliVersion + " (encoding " +
                                        comgpt::kEncodingVersion + ", prompts " +
                                        comgpt::kPromptVersion + ")");
  app.require_subcommand(0, 1);

  comgpt::ExperimentConfig cfg;
  std::string seeds_text = "all";
  std::string method_text = "comgpt";
  std::string prompt_text = "nsg";
  std::string k_text = "10";

  CLI::App* run = app.add_subcommand("run", "Run an experiment and write reports");
  run->add_option("--graph", cfg.graph_path, "Edge-list file")->required();
  run->add_option("--communities", cfg.communities_path, "Ground-truth communities file")
      ->required();
  run->add_option("--dataset", cfg.dataset, "Dataset label for reports");
  run->add_option("--seeds", seeds_text, "all | sample:<n> | comma-separated nodes");
  run->add_option("--method", method_text, "comgpt | m | r | method1..method4");
  run->add_option("--prompt", prompt_text, "nsg | zero-shot | few-shot | cot | bag");
  run->add_option("--k", k_text, "Candidate-list sizes, comma separated");
  run->add_option("--runs", cfg.runs_per_seed, "Runs per seed");
  run->add_option("--max-community-size", cfg.max_community_size, "Stop growing at this size");
  run->add_option("--backend", cfg.backend_id, "mock | api");
  run->add_option("--model", cfg.model, "Chat model name");
  run->add_option("--base-url", cfg.base_url, "Chat endpoint base URL");
  run->add_option("--temperature", cfg.temperature, "Sampling temperature");
  run->add_option("--cache-dir", cfg.cache_dir, "Response cache directory");
  run->add_option("--max-calls", cfg.max_calls, "Network call budget, 0 = unlimited");
  run->add_option("--rng-seed", cfg.rng_seed, "Seed for sampling");
  run->add_option("--out", cfg.out_dir, "Output directory");

  std::string enc_graph, enc_community, enc_outside;
  bool enc_topology_only = false;
  CLI::App* encode = app.add_subcommand("encode", "Print the text encoding of a community view");
  encode->add_option("--graph", enc_graph, "Edge-list file")->required();
  encode->add_option("--community", enc_community, "Nodes inside C, comma separated")->required();
  encode->add_option("--outside", enc_outside, "Outside nodes, comma separated");
  encode->add_flag("--topology-only", enc_topology_only, "Omit the community description");

  std::string score_graph, score_community;
  CLI::App* score = app.add_subcommand("score", "Print local modularity of a node set");
  score->add_option("--graph", score_graph, "Edge-list file")->required();
  score->add_option("--community", score_community, "Nodes inside C, comma separated")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      cfg.seeds = comgpt::parse_seed_spec(seeds_text);
      cfg.method = comgpt::method_from_string(method_text);
      cfg.prompt_variant = comgpt::prompt_variant_from_string(prompt_text);
      cfg.k_values = parse_k_list(k_text);
      cfg.validate();
      return run_command(cfg);
    }
    if (encode->parsed()) {
      comgpt::Graph g = load_graph_file(enc_graph);
      auto community_list = parse_node_list(enc_community);
      comgpt::NodeSet community(community_list.begin(), community_list.end());
      std::vector<comgpt::NodeId> outside;
      if (!enc_outside.empty()) outside = parse_node_list(enc_outside);
      comgpt::NodeSet local_nodes = community;
      local_nodes.insert(outside.begin(), outside.end());
      comgpt::Graph local = comgpt::induced_subgraph(g, local_nodes);
      comgpt::GraphText gtxt = enc_topology_only
                                   ? comgpt::encode_topology_only(local, community, outside)
                                   : comgpt::encode_graph_text(local, community, outside);
      std::cout << gtxt.full_text << "\n";
      return 0;
    }
    if (score->parsed()) {
      comgpt::Graph g = load_graph_file(score_graph);
      auto community_list = parse_node_list(score_community);
      comgpt::NodeSet community(community_list.begin(), community_list.end());
      comgpt::ModularityScore m = comgpt::local_modularity_m(g, community);
      comgpt::Rational r = comgpt::local_modularity_r(g, community);
      std::cout << "M = " << m.str() << "\n";
      std::cout << "R = " << r.str() << "\n";
      return 0;
    }
    std::cerr << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
