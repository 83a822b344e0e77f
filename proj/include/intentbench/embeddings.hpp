#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intentbench/dataset.hpp"
#include "intentbench/labels.hpp"

namespace intentbench {

struct EmbeddingVector {
  std::vector<double> values;
  std::string provider_id;

  std::size_t dim() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

struct ProviderSpec {
  std::string provider_id;
  std::size_t dim = 0;
  std::optional<std::size_t> max_chars;
  std::string endpoint;      // remote providers only
  std::string auth_env_var;  // name of the env var holding the bearer token
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds base_backoff{250};  // doubles per attempt
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual const ProviderSpec& provider() const = 0;

  // Embeds one text. Enforces the provider's max_chars limit (TooLong) and
  // returns a vector of provider().dim finite reals.
  virtual EmbeddingVector embed(std::string_view text) = 0;
};

// Seeded character 3-gram hashing embedder: grams are hashed into dim signed
// buckets and the result is L2-normalized. Deterministic, offline, and
// language-agnostic; stands in for the remote providers in tests.
EmbeddingVector local_hash_embed(std::string_view text, std::size_t dim,
                                 std::uint64_t seed);

class LocalHashEmbedder : public Embedder {
 public:
  LocalHashEmbedder(std::string provider_id, std::size_t dim,
                    std::uint64_t seed,
                    std::optional<std::size_t> max_chars = std::nullopt);

  const ProviderSpec& provider() const override { return spec_; }
  EmbeddingVector embed(std::string_view text) override;

 private:
  ProviderSpec spec_;
  std::uint64_t seed_;
};

// Remote wire contract: POST {"texts": [string]} to the endpoint, bearer
// token from the env var named in the spec, response {"embeddings": [[f]]}.
// Retries transient failures per the policy, then throws
// ProviderUnavailable; shape mismatches throw BadResponse.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(ProviderSpec spec, RetryPolicy retry = {});

  const ProviderSpec& provider() const override { return spec_; }
  EmbeddingVector embed(std::string_view text) override;

 private:
  ProviderSpec spec_;
  RetryPolicy retry_;
};

// Content-addressed disk cache. Layout:
//   <root>/<provider_id>/<hex sha-256 of text>.json  ->  {"dim":N,"values":[...]}
// Writers go through a temp file plus rename, so concurrent processes never
// observe a partial entry.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(std::filesystem::path root);

  std::optional<std::vector<double>> lookup(const std::string& provider_id,
                                            std::string_view text) const;
  void store(const std::string& provider_id, std::string_view text,
             const std::vector<double>& values) const;

  std::filesystem::path entry_path(const std::string& provider_id,
                                   std::string_view text) const;

 private:
  std::filesystem::path root_;
};

// Wraps an embedder with the disk cache. Hits return the stored vector
// bit-identically.
class CachedEmbedder : public Embedder {
 public:
  CachedEmbedder(std::shared_ptr<Embedder> inner, EmbeddingCache cache);

  const ProviderSpec& provider() const override { return inner_->provider(); }
  EmbeddingVector embed(std::string_view text) override;

 private:
  std::shared_ptr<Embedder> inner_;
  EmbeddingCache cache_;
};

struct EmbeddedUtterance {
  LabeledUtterance utterance;
  EmbeddingVector vec;
};

struct SkipEntry {
  std::size_t index;  // position in the input corpus
  std::string reason;
};

struct CorpusEmbedding {
  std::vector<EmbeddedUtterance> items;  // input order, over-limit items absent
  std::vector<SkipEntry> skipped;
};

// Embeds a whole corpus with up to `concurrency` in-flight calls. Over-limit
// texts are skipped and reported instead of failing; any other provider
// error aborts. Output order and content are independent of concurrency.
CorpusEmbedding embed_corpus(Embedder& embedder, const Corpus& corpus,
                             std::size_t concurrency);

// Training-side view of an embedded sample.
struct LabeledVector {
  EmbeddingVector vec;
  IntentLabel label = IntentLabel::Conversation;
};

std::vector<LabeledVector> to_labeled_vectors(const CorpusEmbedding& embedded);

// Vector file interchange (JSONL): one record per line,
// {"text":...,"label":...,"provider":...,"values":[...]}.
struct VectorRecord {
  std::string text;
  IntentLabel label = IntentLabel::Conversation;
  EmbeddingVector vec;
};

void save_vectors(const std::vector<VectorRecord>& records,
                  const std::filesystem::path& path);
std::vector<VectorRecord> load_vectors(const std::filesystem::path& path);

std::vector<LabeledVector> to_labeled_vectors(
    const std::vector<VectorRecord>& records);

}  // namespace intentbench
