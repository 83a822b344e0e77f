#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "intentbench/labels.hpp"

namespace intentbench {

// One raw interaction. Text is stored verbatim; no normalization of any kind.
struct LabeledUtterance {
  std::string text;
  IntentLabel label = IntentLabel::Conversation;

  bool operator==(const LabeledUtterance&) const = default;
};

struct Corpus {
  std::vector<LabeledUtterance> items;
  std::string provenance;  // file path or "synthetic:<seed>"

  std::array<std::size_t, kNumClasses> class_counts() const;
  std::size_t size() const { return items.size(); }
};

enum class CorpusFormat { jsonl, csv };

// Reads a corpus file. JSONL records are {"text": ..., "label": ...}; CSV
// has a text,label header row and RFC-4180 quoting. Record order is
// preserved. Throws MalformedRecord, UnknownLabel or EmptyText with the
// offending record number.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                 CorpusFormat format);

// Infers jsonl/csv from the file extension, defaulting to jsonl.
CorpusFormat corpus_format_for(const std::filesystem::path& path);

struct SplitConfig {
  double train_fraction = 0.40;
  std::uint64_t seed = 0;
  bool stratified = true;
};

// Splits into (train, test). Stratified mode allocates per-class counts by
// floor plus largest remainder so that |train| lands on
// round(train_fraction * |corpus|) and every class keeps its fraction within
// one sample. Deterministic for a fixed seed.
std::pair<Corpus, Corpus> stratified_split(const Corpus& corpus,
                                           const SplitConfig& cfg);

// Deterministic synthetic corpus with one template family per class:
// chit-chat and general questions, service bookings, and document
// translation requests. class_mix fractions must sum to 1.
Corpus synthesize_corpus(std::size_t n_total,
                         const std::array<double, kNumClasses>& class_mix,
                         std::uint64_t seed);

}  // namespace intentbench
