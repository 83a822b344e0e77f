#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "intentbench/embeddings.hpp"
#include "intentbench/labels.hpp"

namespace intentbench {

// Rows are the true class, columns the predicted class, in canonical class
// order.
struct ConfusionMatrix {
  std::array<std::array<std::int64_t, kNumClasses>, kNumClasses> m{};

  std::int64_t total() const;
  std::array<std::int64_t, kNumClasses> row_sums() const;
};

ConfusionMatrix confusion(const std::vector<IntentLabel>& truth,
                          const std::vector<IntentLabel>& predicted);

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct F1Report {
  std::array<ClassScores, kNumClasses> per_class;
  double macro_f1 = 0.0;     // unweighted mean of the three per-class F1
  double weighted_f1 = 0.0;  // support-weighted mean
};

// 0/0 ratios are defined as 0.
F1Report f1_scores(const ConfusionMatrix& cm);

struct LatencyStats {
  double mean_s = 0.0;
  double p50_s = 0.0;
  double p95_s = 0.0;
  std::size_t samples = 0;
};

// Whether a row's timing covers just the classifier call or the full remote
// round trip.
enum class TimingScope { predict_only, full_round_trip };

struct EvalReport {
  std::string classifier_id;
  int runs = 1;
  F1Report f1;
  ConfusionMatrix cm;
  LatencyStats latency;
  TimingScope scope = TimingScope::predict_only;
  std::size_t error_count = 0;
};

// Predicts sample `index` of the test set; may throw, which the benchmark
// records as a per-sample error.
using PredictFn = std::function<IntentLabel(std::size_t)>;

// Runs the full test set `runs` times. Metrics come from the first run;
// latency is aggregated over every timed call. Sample order is shuffled per
// run from the seed (the first run keeps input order so the confusion matrix
// is reproducible).
EvalReport benchmark(std::string classifier_id,
                     const std::vector<IntentLabel>& truth,
                     const PredictFn& predict, int runs, std::uint64_t seed,
                     TimingScope scope = TimingScope::predict_only);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

// Comparison table, one row per report: rows sorted by macro-F1 descending,
// ties by mean latency ascending. CSV header:
//   classifier,f1_conversation,f1_services,f1_document_translation,f1_macro,latency_mean_s
std::string comparison_csv(const std::vector<EvalReport>& reports);
std::string comparison_markdown(const std::vector<EvalReport>& reports);

struct Projection2D {
  std::vector<std::array<double, 2>> coords;
  std::vector<IntentLabel> labels;
  std::array<double, 2> explained;  // variance fractions, first >= second
};

// Centers the data and extracts the top two principal directions by power
// iteration with deflation (tolerance 1e-9, at most 1000 iterations).
Projection2D pca_project(const std::vector<EmbeddingVector>& vectors,
                         const std::vector<IntentLabel>& labels);

// CSV "x,y,label,provider" for external plotting.
std::string projection_csv(const Projection2D& projection,
                           const std::string& provider_id);

}  // namespace intentbench
