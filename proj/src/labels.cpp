#include "intentbench/labels.hpp"

#include <algorithm>
#include <cctype>

namespace intentbench {

std::string_view label_name(IntentLabel label) {
  switch (label) {
    case IntentLabel::Conversation:
      return "Conversation";
    case IntentLabel::Services:
      return "Services";
    case IntentLabel::DocumentTranslation:
      return "Document_Translation";
  }
  return "Conversation";
}

std::optional<IntentLabel> parse_label(std::string_view name) {
  if (name == "Conversation") return IntentLabel::Conversation;
  if (name == "Services") return IntentLabel::Services;
  if (name == "Document_Translation") return IntentLabel::DocumentTranslation;
  // input alias
  if (name == "Translate_Document") return IntentLabel::DocumentTranslation;
  return std::nullopt;
}

std::optional<IntentLabel> parse_label_lenient(std::string_view name) {
  std::string norm;
  norm.reserve(name.size());
  for (char c : name) {
    if (c == ' ') c = '_';
    norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  // trim leading/trailing underscores that came from padding spaces
  const auto first = norm.find_first_not_of('_');
  if (first == std::string::npos) return std::nullopt;
  const auto last = norm.find_last_not_of('_');
  norm = norm.substr(first, last - first + 1);

  if (norm == "conversation") return IntentLabel::Conversation;
  if (norm == "services") return IntentLabel::Services;
  if (norm == "document_translation" || norm == "translate_document")
    return IntentLabel::DocumentTranslation;
  return std::nullopt;
}

}  // namespace intentbench
