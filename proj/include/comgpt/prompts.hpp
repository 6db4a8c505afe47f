#pragma once

#include <stdexcept>
#include <string>

namespace comgpt {

/// Version tag for every prompt string below; recorded in experiment
/// reports next to the encoder tag.
inline constexpr const char* kPromptVersion = "prompt-v1";

// Node-selection guidance, sent as the system message of selection
// queries.
inline constexpr const char* kNsgPrompt1 =
    "The more an outside node is connected to other outside nodes, the higher the likelihood of "
    "its selection.";
inline constexpr const char* kNsgPrompt2 =
    "Prioritize selecting outside nodes that are connected to multiple nodes within the "
    "community.";

// Node-supplementation guidance: community definition plus the cohesion
// criterion the supplementation step decides by.
inline constexpr const char* kNsuPrompt =
    "A community is a group of nodes that are densely connected to each other and sparsely "
    "connected to the rest of the network. Decide whether adding one of the listed outside nodes "
    "would maintain the cohesion of the community C.";

inline constexpr const char* kSelectionQuestion =
    "You're doing local community detection. Based on the graph data and prompt, please select a "
    "node that you think is most likely to belong to the current community C for community "
    "expansion. Provide a detailed explanation.";

inline constexpr const char* kSupplementationQuestion =
    "Please analyze whether these nodes should be added to the community C. The probability of "
    "not adding nodes is higher. But it doesn't mean you always refuse to add nodes. If you think "
    "there is a suitable node, please output its node number.";

inline constexpr const char* kCotSuffix = "Let's think step by step.";
inline constexpr const char* kBagSuffix =
    "Let’s construct a graph with the nodes and edges first.";

// Worked selection demonstrations for the few-shot regime.
inline constexpr const char* kFewShotExemplars =
    "Example 1:\n"
    "Node 1 is connected to nodes 2, 3.\n"
    "Node 2 is connected to nodes 1, 3.\n"
    "Node 3 is connected to nodes 1, 2, 4.\n"
    "Node 4 is connected to nodes 3.\n"
    "\n"
    "Community C contains nodes: 1, 2.\n"
    "Outside nodes: 3, 4.\n"
    "Outside node 3 connects to 2 node(s) inside C and 1 node(s) outside C.\n"
    "Outside node 4 connects to 0 node(s) inside C and 1 node(s) outside C.\n"
    "Answer: node 3, because it connects to both community members while node 4 touches none.\n"
    "\n"
    "Example 2:\n"
    "Node 5 is connected to nodes 6, 7, 8.\n"
    "Node 6 is connected to nodes 5, 7.\n"
    "Node 7 is connected to nodes 5, 6, 9.\n"
    "Node 8 is connected to nodes 5.\n"
    "Node 9 is connected to nodes 7.\n"
    "\n"
    "Community C contains nodes: 5, 6, 7.\n"
    "Outside nodes: 8, 9.\n"
    "Outside node 8 connects to 1 node(s) inside C and 0 node(s) outside C.\n"
    "Outside node 9 connects to 1 node(s) inside C and 0 node(s) outside C.\n"
    "Answer: node 8, because it attaches to the community's highest-degree member.";

enum class PromptVariant { NSG, NSU, ZeroShot, FewShot, CoT, BaG };

inline const char* to_string(PromptVariant v) {
  switch (v) {
    case PromptVariant::NSG: return "nsg";
    case PromptVariant::NSU: return "nsu";
    case PromptVariant::ZeroShot: return "zero-shot";
    case PromptVariant::FewShot: return "few-shot";
    case PromptVariant::CoT: return "cot";
    case PromptVariant::BaG: return "bag";
  }
  return "?";
}

inline PromptVariant prompt_variant_from_string(const std::string& name) {
  if (name == "nsg") return PromptVariant::NSG;
  if (name == "nsu") return PromptVariant::NSU;
  if (name == "zero-shot" || name == "zeroshot") return PromptVariant::ZeroShot;
  if (name == "few-shot" || name == "fewshot") return PromptVariant::FewShot;
  if (name == "cot") return PromptVariant::CoT;
  if (name == "bag") return PromptVariant::BaG;
  throw std::invalid_argument("unknown prompt variant '" + name + "'");
}

/// A system message plus the question closing the user message.
struct PromptBundle {
  PromptVariant variant = PromptVariant::NSG;
  std::string system_text;
  std::string question_text;

  bool is_selection() const { return variant != PromptVariant::NSU; }
};

/// Selection bundle for a prompt regime. NSG carries the two guidance
/// sentences; the comparison regimes replace them (CoT/BaG append their
/// sentence to the question instead).
inline PromptBundle make_selection_bundle(PromptVariant variant) {
  PromptBundle b;
  b.variant = variant;
  b.question_text = kSelectionQuestion;
  switch (variant) {
    case PromptVariant::NSG:
      b.system_text = std::string(kNsgPrompt1) + "\n" + kNsgPrompt2;
      break;
    case PromptVariant::ZeroShot:
      break;
    case PromptVariant::FewShot:
      b.system_text = kFewShotExemplars;
      break;
    case PromptVariant::CoT:
      b.question_text = std::string(kSelectionQuestion) + "\n" + kCotSuffix;
      break;
    case PromptVariant::BaG:
      b.question_text = std::string(kSelectionQuestion) + "\n" + kBagSuffix;
      break;
    case PromptVariant::NSU:
      throw std::invalid_argument("NSU is not a selection variant");
  }
  return b;
}

inline PromptBundle make_supplementation_bundle() {
  PromptBundle b;
  b.variant = PromptVariant::NSU;
  b.system_text = kNsuPrompt;
  b.question_text = kSupplementationQuestion;
  return b;
}

}  // namespace comgpt
