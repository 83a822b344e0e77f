#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intentbench/dataset.hpp"
#include "intentbench/embeddings.hpp"  // RetryPolicy
#include "intentbench/labels.hpp"

namespace intentbench {

enum class PromptVariant { simple, augmented };

PromptVariant parse_variant(std::string_view name);

// Structured template: one definition per class, the Conversation-first
// hierarchy rule, and the JSON output instruction. Each definition must
// mention its own class name exactly once and no other class name.
struct PromptTemplate {
  std::string preamble;
  std::array<std::string, kNumClasses> definitions;
  std::string hierarchy_rule;
  std::string output_instruction;
  std::string examples_header;
};

PromptTemplate default_prompt_template();

struct CompletionRequest {
  std::string prompt;
  int max_tokens = 50;
  double temperature = 0.0;
  std::string model_id;
};

// Per-class caps on how many labeled examples the augmented prompt may
// carry.
struct ExampleBudget {
  std::array<std::size_t, kNumClasses> caps{500, 26, 140};
};

struct SelectedExamples {
  std::vector<LabeledUtterance> items;  // grouped by class, corpus order kept
};

// Takes min(cap, available) per class; classes over their cap are sampled
// uniformly without replacement using the seed. Deterministic.
SelectedExamples select_examples(const Corpus& train,
                                 const ExampleBudget& budget,
                                 std::uint64_t seed);

// Renders the full prompt. The augmented variant appends the examples as a
// JSON array of {"text", "class"} objects under the examples header; the
// question is inserted verbatim. Throws MissingExamples when the augmented
// variant is requested without examples.
std::string build_prompt(const PromptTemplate& tmpl, std::string_view question,
                         PromptVariant variant,
                         const std::optional<SelectedExamples>& examples);

// File-based alternative: a plain-text template with {question} and
// {examples} placeholders.
std::string render_raw_template(std::string_view raw,
                                std::string_view question,
                                const std::optional<SelectedExamples>& examples);

// Extracts the first JSON object from the response and reads its class field
// (keys "category", "class" or "label"; values matched case-insensitively
// with underscore/space equivalence plus the "Translate_Document" alias).
// Never crashes on arbitrary bytes: throws UnparseableResponse or
// UnknownLabel.
IntentLabel parse_verdict(std::string_view raw);

// Chat-completion transport: takes the request, returns the model text.
// Throws TransportError on delivery failure.
using ChatTransport = std::function<std::string(const CompletionRequest&)>;

// HTTP transport for the wire contract
//   POST {"prompt","max_tokens","temperature","model_id"} -> {"text"}
// with a bearer token read from auth_env_var when set.
ChatTransport http_chat_transport(std::string endpoint,
                                  std::string auth_env_var = {},
                                  RetryPolicy retry = {});

struct RouterConfig {
  PromptVariant variant = PromptVariant::simple;
  PromptTemplate tmpl = default_prompt_template();
  std::string model_id = "mock-model";
  int max_tokens = 50;
  double temperature = 0.0;
  int retries = 2;  // re-sends after an unparseable response
  std::optional<SelectedExamples> examples;
};

struct RouterVerdict {
  IntentLabel label = IntentLabel::Conversation;
  std::string raw_response;
  int parse_attempts = 1;
  double latency_s = 0.0;  // wall clock across all attempts
};

// Builds the prompt, calls the transport, parses. Unparseable responses are
// retried up to cfg.retries times with an appended format reminder;
// exhaustion throws ExhaustedRetries carrying the last raw response.
RouterVerdict classify(const RouterConfig& cfg, std::string_view question,
                       const ChatTransport& transport);

}  // namespace intentbench
