#include "intentbench/embeddings.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include <unistd.h>

#include <httplib.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "intentbench/errors.hpp"

namespace intentbench {

namespace {

using json = nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_gram(std::string_view gram, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ULL ^ splitmix64(seed);
  for (unsigned char b : gram) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return splitmix64(h);
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

void enforce_limits(const ProviderSpec& spec, std::string_view text) {
  if (text.empty()) throw EmptyText();
  if (spec.max_chars && text.size() > *spec.max_chars) {
    throw TooLong(text.size(), *spec.max_chars);
  }
}

// "http://host:port/path" -> {"http://host:port", "/path"}
std::pair<std::string, std::string> split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start =
      url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string excerpt(const std::string& body) {
  return body.size() <= 200 ? body : body.substr(0, 200) + "...";
}

}  // namespace

EmbeddingVector local_hash_embed(std::string_view text, std::size_t dim,
                                 std::uint64_t seed) {
  if (dim < 2) {
    throw Error(ErrorCategory::config, "embedding dim must be at least 2");
  }
  if (text.empty()) throw EmptyText();

  std::vector<double> values(dim, 0.0);
  auto add_gram = [&](std::string_view gram) {
    const std::uint64_t h = hash_gram(gram, seed);
    const double sign = (h >> 63) ? -1.0 : 1.0;
    values[h % dim] += sign;
  };
  if (text.size() < 3) {
    add_gram(text);
  } else {
    for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
      add_gram(text.substr(i, 3));
    }
  }

  double norm_sq = 0.0;
  for (double v : values) norm_sq += v * v;
  if (norm_sq == 0.0) {
    // all grams cancelled; fall back to a single whole-text bucket
    values[hash_gram(text, seed ^ 0x5bd1e995) % dim] = 1.0;
    norm_sq = 1.0;
  }
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (double& v : values) v *= inv_norm;
  return EmbeddingVector{std::move(values), ""};
}

LocalHashEmbedder::LocalHashEmbedder(std::string provider_id, std::size_t dim,
                                     std::uint64_t seed,
                                     std::optional<std::size_t> max_chars)
    : seed_(seed) {
  spec_.provider_id = std::move(provider_id);
  spec_.dim = dim;
  spec_.max_chars = max_chars;
}

EmbeddingVector LocalHashEmbedder::embed(std::string_view text) {
  enforce_limits(spec_, text);
  auto vec = local_hash_embed(text, spec_.dim, seed_);
  vec.provider_id = spec_.provider_id;
  return vec;
}

HttpEmbedder::HttpEmbedder(ProviderSpec spec, RetryPolicy retry)
    : spec_(std::move(spec)), retry_(retry) {
  if (spec_.endpoint.empty()) {
    throw Error(ErrorCategory::config,
                "provider " + spec_.provider_id + " has no endpoint");
  }
}

EmbeddingVector HttpEmbedder::embed(std::string_view text) {
  enforce_limits(spec_, text);

  json body;
  body["texts"] = json::array({std::string(text)});
  const std::string payload = body.dump();

  const auto [base, path] = split_endpoint(spec_.endpoint);
  httplib::Headers headers;
  if (!spec_.auth_env_var.empty()) {
    if (const char* token = std::getenv(spec_.auth_env_var.c_str())) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }

  int last_status = 0;
  std::string last_body;
  for (int attempt = 0; attempt < retry_.attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(retry_.base_backoff * (1 << (attempt - 1)));
    }
    httplib::Client client(base);
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_status = 0;
      last_body = "connection failed";
      continue;
    }
    if (res->status != 200) {
      last_status = res->status;
      last_body = res->body;
      continue;
    }
    json reply = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    if (reply.is_discarded() || !reply.contains("embeddings") ||
        !reply["embeddings"].is_array() || reply["embeddings"].size() != 1 ||
        !reply["embeddings"][0].is_array()) {
      throw BadResponse("embedding response missing \"embeddings\" array");
    }
    const auto& arr = reply["embeddings"][0];
    if (arr.size() != spec_.dim) {
      throw BadResponse("expected " + std::to_string(spec_.dim) +
                        " values, got " + std::to_string(arr.size()));
    }
    EmbeddingVector vec;
    vec.provider_id = spec_.provider_id;
    vec.values.reserve(arr.size());
    for (const auto& v : arr) {
      if (!v.is_number()) throw BadResponse("non-numeric embedding value");
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw BadResponse("non-finite embedding value");
      vec.values.push_back(d);
    }
    return vec;
  }
  throw ProviderUnavailable(last_status, excerpt(last_body));
}

EmbeddingCache::EmbeddingCache(std::filesystem::path root)
    : root_(std::move(root)) {}

std::filesystem::path EmbeddingCache::entry_path(
    const std::string& provider_id, std::string_view text) const {
  return root_ / provider_id / (sha256_hex(text) + ".json");
}

std::optional<std::vector<double>> EmbeddingCache::lookup(
    const std::string& provider_id, std::string_view text) const {
  const auto path = entry_path(provider_id, text);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.contains("values") || !j["values"].is_array()) {
    return std::nullopt;  // corrupt entry: treat as a miss
  }
  auto values = j["values"].get<std::vector<double>>();
  if (j.contains("dim") && j["dim"].get<std::size_t>() != values.size()) {
    return std::nullopt;
  }
  return values;
}

void EmbeddingCache::store(const std::string& provider_id,
                           std::string_view text,
                           const std::vector<double>& values) const {
  const auto path = entry_path(provider_id, text);
  std::filesystem::create_directories(path.parent_path());

  json j;
  j["dim"] = values.size();
  j["values"] = values;

  static std::atomic<std::uint64_t> counter{0};
  const auto tmp = path.parent_path() /
                   (".tmp-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter.fetch_add(1)) + ".json");
  {
    std::ofstream out(tmp, std::ios::binary);
    out << j.dump();
    if (!out) {
      std::filesystem::remove(tmp);
      throw Error(ErrorCategory::data, "cache write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

CachedEmbedder::CachedEmbedder(std::shared_ptr<Embedder> inner,
                               EmbeddingCache cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

EmbeddingVector CachedEmbedder::embed(std::string_view text) {
  enforce_limits(provider(), text);
  if (auto hit = cache_.lookup(provider().provider_id, text)) {
    return EmbeddingVector{std::move(*hit), provider().provider_id};
  }
  auto vec = inner_->embed(text);
  cache_.store(provider().provider_id, text, vec.values);
  return vec;
}

CorpusEmbedding embed_corpus(Embedder& embedder, const Corpus& corpus,
                             std::size_t concurrency) {
  if (concurrency < 1) {
    throw Error(ErrorCategory::config, "concurrency must be at least 1");
  }
  const auto& spec = embedder.provider();
  const std::size_t n = corpus.size();

  CorpusEmbedding result;
  std::vector<std::size_t> pending;  // indices that need an embedding call
  for (std::size_t i = 0; i < n; ++i) {
    const auto& text = corpus.items[i].text;
    if (spec.max_chars && text.size() > *spec.max_chars) {
      result.skipped.push_back(
          {i, "text of " + std::to_string(text.size()) +
                  " characters exceeds provider limit of " +
                  std::to_string(*spec.max_chars)});
    } else {
      pending.push_back(i);
    }
  }

  std::vector<std::optional<EmbeddingVector>> slots(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t t = next.fetch_add(1);
      if (t >= pending.size()) return;
      const std::size_t idx = pending[t];
      try {
        slots[idx] = embedder.embed(corpus.items[idx].text);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min(concurrency, pending.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i]) {
      result.items.push_back({corpus.items[i], std::move(*slots[i])});
    }
  }
  return result;
}

std::vector<LabeledVector> to_labeled_vectors(const CorpusEmbedding& embedded) {
  std::vector<LabeledVector> out;
  out.reserve(embedded.items.size());
  for (const auto& item : embedded.items) {
    out.push_back({item.vec, item.utterance.label});
  }
  return out;
}

std::vector<LabeledVector> to_labeled_vectors(
    const std::vector<VectorRecord>& records) {
  std::vector<LabeledVector> out;
  out.reserve(records.size());
  for (const auto& rec : records) out.push_back({rec.vec, rec.label});
  return out;
}

void save_vectors(const std::vector<VectorRecord>& records,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCategory::data, "cannot write " + path.string());
  }
  for (const auto& rec : records) {
    json j;
    j["text"] = rec.text;
    j["label"] = std::string(label_name(rec.label));
    j["provider"] = rec.vec.provider_id;
    j["values"] = rec.vec.values;
    out << j.dump() << '\n';
  }
  if (!out) throw Error(ErrorCategory::data, "write failed: " + path.string());
}

std::vector<VectorRecord> load_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::data, "cannot open " + path.string());
  std::vector<VectorRecord> records;
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    ++record;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("label") ||
        !j.contains("values") || !j["values"].is_array()) {
      throw MalformedRecord(record, "expected {text,label,provider,values}");
    }
    VectorRecord rec;
    rec.text = j.value("text", "");
    const auto label = parse_label(j["label"].get<std::string>());
    if (!label) throw UnknownLabel(j["label"].get<std::string>(), record);
    rec.label = *label;
    rec.vec.provider_id = j.value("provider", "");
    rec.vec.values = j["values"].get<std::vector<double>>();
    for (double v : rec.vec.values) {
      if (!std::isfinite(v)) {
        throw MalformedRecord(record, "non-finite embedding value");
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace intentbench
