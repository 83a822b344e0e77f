#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace intentbench {

// The three interaction intents. Index order is the canonical class order
// used everywhere (vectors of per-class values, one-hot targets, confusion
// matrix axes).
enum class IntentLabel : int {
  Conversation = 0,
  Services = 1,
  DocumentTranslation = 2,
};

inline constexpr std::size_t kNumClasses = 3;

inline constexpr std::array<IntentLabel, kNumClasses> kClassOrder = {
    IntentLabel::Conversation,
    IntentLabel::Services,
    IntentLabel::DocumentTranslation,
};

constexpr int label_index(IntentLabel label) { return static_cast<int>(label); }

constexpr IntentLabel label_at(std::size_t index) {
  return kClassOrder[index];
}

// Canonical serialized names, underscore form for the translation class.
std::string_view label_name(IntentLabel label);

// Strict parse: canonical names plus the "Translate_Document" input alias.
std::optional<IntentLabel> parse_label(std::string_view name);

// Lenient parse: case-insensitive, treats spaces and underscores as
// equivalent. Used when reading model responses, not corpus files.
std::optional<IntentLabel> parse_label_lenient(std::string_view name);

// Argmax over per-class values. Exact ties are broken by class priority
// Conversation > DocumentTranslation > Services.
template <typename T>
IntentLabel argmax_label(const std::array<T, kNumClasses>& scores) {
  // priority order as class indices
  constexpr std::array<int, kNumClasses> priority = {0, 2, 1};
  int best = priority[0];
  for (int idx : priority) {
    if (scores[idx] > scores[best]) best = idx;
  }
  return label_at(static_cast<std::size_t>(best));
}

}  // namespace intentbench
