#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intentbench/ann.hpp"
#include "intentbench/knn.hpp"
#include "intentbench/labels.hpp"
#include "intentbench/svm.hpp"

namespace intentbench {

struct PipelineProvider {
  std::string id;
  enum class Kind { local, http } kind = Kind::local;
  std::size_t dim = 512;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_chars;
  std::string endpoint;
  std::string auth_env_var;
};

// Fully resolved run configuration: one flat key=value file plus
// command-line overrides. Every pipeline run writes its resolved form next
// to its outputs.
struct RunConfig {
  // corpus: either a file or a synthetic one
  std::string corpus_path;  // empty -> synthesize
  std::size_t synth_n = 1668;
  std::array<double, kNumClasses> synth_mix{0.751, 0.039, 0.210};

  double train_fraction = 0.40;
  std::uint64_t seed = 42;

  std::vector<PipelineProvider> providers;
  std::vector<std::string> backends{"knn", "svm", "ann"};

  std::size_t knn_k = 3;
  DistanceMetric knn_metric = DistanceMetric::euclidean;

  SvmHyperparams svm;
  TrainConfig ann;
  double ann_validation_fraction = 0.20;  // carved from the training split
  bool ann_validate_on_test = false;

  // llm backend (only runs when an endpoint or canned reply is configured)
  std::string llm_endpoint;
  std::string llm_auth_env_var;
  std::string llm_variant = "simple";
  std::string llm_mock_reply;       // offline transport for demos/tests
  std::size_t llm_max_samples = 50; // test subset for the llm row

  int benchmark_runs = 3;
  std::size_t embed_concurrency = 1;
  std::string cache_dir;  // empty -> no disk cache
  std::string out_dir = "out";
};

// Parses "key = value" lines; '#' starts a comment. Unknown keys are
// configuration errors.
RunConfig load_run_config(const std::filesystem::path& path);
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);
RunConfig default_run_config();

std::string dump_resolved_config(const RunConfig& cfg);

// End-to-end run: corpus -> split -> embed per provider -> train the
// configured backends -> benchmark -> comparison table. Writes models,
// reports, the comparison CSV/Markdown and the resolved config into
// cfg.out_dir. Outputs are staged and moved into place only on success.
void run_pipeline(const RunConfig& cfg);

}  // namespace intentbench
