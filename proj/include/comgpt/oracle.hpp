#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "comgpt/encoding.hpp"
#include "comgpt/graph.hpp"
#include "comgpt/prompts.hpp"
#include "comgpt/scoring.hpp"

namespace comgpt {

/// Transport-level failure (network, HTTP status, malformed payload)
/// after the backend's own retries. Distinct from a parse failure, which
/// is a well-formed response naming no usable node.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the experiment-wide call budget is exhausted.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of one oracle query: a chosen node, a stop signal, or an
/// unusable response.
struct OracleDecision {
  enum class Kind { Selected, Null, ParseFailure };

  Kind kind = Kind::ParseFailure;
  NodeId node = -1;
  std::string raw_response;
  int attempts = 0;

  static OracleDecision selected(NodeId v, std::string raw, int attempts) {
    return {Kind::Selected, v, std::move(raw), attempts};
  }
  static OracleDecision null(std::string raw, int attempts) {
    return {Kind::Null, -1, std::move(raw), attempts};
  }
  static OracleDecision parse_failure(std::string raw, int attempts) {
    return {Kind::ParseFailure, -1, std::move(raw), attempts};
  }

  bool is_selected() const { return kind == Kind::Selected; }
  bool is_null() const { return kind == Kind::Null; }
  bool is_parse_failure() const { return kind == Kind::ParseFailure; }
};

struct ParsedResponse {
  enum class Kind { Node, NullSignal, Failure };
  Kind kind = Kind::Failure;
  NodeId node = -1;
};

/// Total response parser. Scans integer tokens in order and returns the
/// first one among the offered candidates, else the first one present in
/// the local network; failing that, a standalone case-insensitive "null"
/// token becomes the stop signal.
inline ParsedResponse parse_node_response(const std::string& text, const NodeSet& local_nodes,
                                          const NodeSet& pn) {
  std::optional<NodeId> first_local;
  bool saw_null = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    unsigned char ch = static_cast<unsigned char>(text[i]);
    if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j - i <= 18) {  // longer runs cannot be node ids
        NodeId v = std::stoll(text.substr(i, j - i));
        if (pn.count(v)) return {ParsedResponse::Kind::Node, v};
        if (!first_local && local_nodes.count(v)) first_local = v;
      }
      i = j;
    } else if (std::isalpha(ch)) {
      std::size_t j = i;
      while (j < n && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
      if (j - i == 4) {
        std::string word = text.substr(i, 4);
        for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (word == "null") saw_null = true;
      }
      i = j;
    } else {
      ++i;
    }
  }
  if (first_local) return {ParsedResponse::Kind::Node, *first_local};
  if (saw_null) return {ParsedResponse::Kind::NullSignal, -1};
  return {ParsedResponse::Kind::Failure, -1};
}

/// Text-completion backend boundary: one chat turn in, the assistant
/// message text out. Implementations must be safe under concurrent calls.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const std::string& system_text, const std::string& user_text) = 0;
};

struct RetryPolicy {
  int max_parse_retries = 2;
  /// Appended to the user message on re-asks after an unusable response.
  std::string reask_suffix = "Answer with only a node number.";
};

/// Selection query against a text backend: encode, ask, parse, re-ask on
/// unusable responses, and report ParseFailure once retries are spent.
inline OracleDecision select_node(ChatBackend& backend, const GraphText& gtxt,
                                  const PromptBundle& bundle, const PotentialNodes& pn,
                                  const RetryPolicy& retry = {}) {
  if (!bundle.is_selection()) throw std::invalid_argument("bundle is not a selection variant");
  if (pn.empty()) throw std::invalid_argument("empty potential-node set");
  NodeSet local(gtxt.local_nodes.begin(), gtxt.local_nodes.end());
  NodeSet offered = pn.node_set();
  std::string user = gtxt.full_text + "\n\n" + bundle.question_text;
  std::string raw;
  int attempts = 0;
  for (int attempt = 0; attempt <= retry.max_parse_retries; ++attempt) {
    std::string message = attempt == 0 ? user : user + "\n" + retry.reask_suffix;
    raw = backend.complete(bundle.system_text, message);
    ++attempts;
    ParsedResponse parsed = parse_node_response(raw, local, offered);
    if (parsed.kind == ParsedResponse::Kind::Node)
      return OracleDecision::selected(parsed.node, raw, attempts);
    // "null" is not a selection answer; treat it like any unusable reply.
  }
  return OracleDecision::parse_failure(raw, attempts);
}

/// Supplementation query: a named node wins, anything else declines.
inline OracleDecision supplement_node(ChatBackend& backend, const GraphText& gtxt,
                                      const PromptBundle& bundle, const PotentialNodes& pn) {
  if (bundle.variant != PromptVariant::NSU)
    throw std::invalid_argument("bundle is not the supplementation variant");
  NodeSet local(gtxt.local_nodes.begin(), gtxt.local_nodes.end());
  NodeSet offered = pn.node_set();
  std::string user = gtxt.full_text + "\n\n" + bundle.question_text;
  std::string raw = backend.complete(bundle.system_text, user);
  ParsedResponse parsed = parse_node_response(raw, local, offered);
  if (parsed.kind == ParsedResponse::Kind::Node)
    return OracleDecision::selected(parsed.node, raw, 1);
  return OracleDecision::null(raw, 1);
}

/// Deterministic selection heuristic standing in for the model: prefer
/// candidates with more links into C, then more links to the other
/// candidates, then the smaller id.
inline NodeId mock_select(const Graph& local, const NodeSet& c, const PotentialNodes& pn) {
  if (pn.empty()) throw std::invalid_argument("empty potential-node set");
  NodeSet offered = pn.node_set();
  std::optional<NodeId> best;
  std::int64_t best_to_c = -1, best_to_pn = -1;
  for (const auto& entry : pn.entries) {
    NodeId v = entry.node;
    std::int64_t to_c = 0, to_pn = 0;
    for (NodeId w : local.neighbors(v)) {
      if (c.count(w)) ++to_c;
      else if (offered.count(w)) ++to_pn;
    }
    bool wins = !best || to_c > best_to_c || (to_c == best_to_c && to_pn > best_to_pn) ||
                (to_c == best_to_c && to_pn == best_to_pn && v < *best);
    if (wins) {
      best = v;
      best_to_c = to_c;
      best_to_pn = to_pn;
    }
  }
  return *best;
}

/// Deterministic supplementation heuristic: accept the candidate with the
/// most links into C only when that is at least 2 and the modularity gain
/// is positive; decline otherwise, so mock pipelines always terminate.
inline std::optional<NodeId> mock_supplement(const Graph& g, const NodeSet& c,
                                             const PotentialNodes& pn) {
  if (pn.empty()) return std::nullopt;
  std::optional<NodeId> best;
  std::int64_t best_to_c = -1;
  for (const auto& entry : pn.entries) {
    NodeId v = entry.node;
    std::int64_t to_c = 0;
    for (NodeId w : g.neighbors(v))
      if (c.count(w)) ++to_c;
    if (!best || to_c > best_to_c || (to_c == best_to_c && v < *best)) {
      best = v;
      best_to_c = to_c;
    }
  }
  if (best_to_c < 2) return std::nullopt;
  if (delta_m(g, c, *best).sign() <= 0) return std::nullopt;
  return best;
}

/// Everything an oracle may look at when deciding. Text backends read the
/// encoded text; the mock reads the graphs directly.
struct OracleContext {
  const Graph& full_graph;
  const Graph& local;
  const NodeSet& community;
  const PotentialNodes& pn;
  const GraphText& gtxt;
};

/// Decision boundary of the pipeline.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual OracleDecision select(const OracleContext& ctx) = 0;
  virtual OracleDecision supplement(const OracleContext& ctx) = 0;
  virtual std::string name() const = 0;
};

class MockOracle : public Oracle {
 public:
  OracleDecision select(const OracleContext& ctx) override {
    NodeId v = mock_select(ctx.local, ctx.community, ctx.pn);
    return OracleDecision::selected(v, "mock", 1);
  }

  OracleDecision supplement(const OracleContext& ctx) override {
    auto v = mock_supplement(ctx.full_graph, ctx.community, ctx.pn);
    if (v) return OracleDecision::selected(*v, "mock", 1);
    return OracleDecision::null("mock", 1);
  }

  std::string name() const override { return "mock"; }
};

/// Ablation selector: always take the head of the candidate ordering.
class FirstOfPnOracle : public Oracle {
 public:
  OracleDecision select(const OracleContext& ctx) override {
    NodeId v = ctx.pn.entries.front().node;
    return OracleDecision::selected(v, "first-of-pn", 1);
  }

  OracleDecision supplement(const OracleContext&) override {
    return OracleDecision::null("first-of-pn", 1);
  }

  std::string name() const override { return "first-of-pn"; }
};

/// Chat-backend oracle: NSG/variant bundle for selection, NSU for
/// supplementation. Skips the network when supplementation has no
/// candidates to offer; the reply could only name community members.
class ApiOracle : public Oracle {
 public:
  ApiOracle(std::shared_ptr<ChatBackend> backend, PromptBundle selection_bundle,
            PromptBundle supplementation_bundle = make_supplementation_bundle(),
            RetryPolicy retry = {})
      : backend_(std::move(backend)),
        selection_(std::move(selection_bundle)),
        supplementation_(std::move(supplementation_bundle)),
        retry_(std::move(retry)) {}

  OracleDecision select(const OracleContext& ctx) override {
    return select_node(*backend_, ctx.gtxt, selection_, ctx.pn, retry_);
  }

  OracleDecision supplement(const OracleContext& ctx) override {
    if (ctx.pn.empty()) return OracleDecision::null("", 0);
    return supplement_node(*backend_, ctx.gtxt, supplementation_, ctx.pn);
  }

  std::string name() const override { return "api"; }

 private:
  std::shared_ptr<ChatBackend> backend_;
  PromptBundle selection_;
  PromptBundle supplementation_;
  RetryPolicy retry_;
};

}  // namespace comgpt
