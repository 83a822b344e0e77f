#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "intentbench/embeddings.hpp"
#include "intentbench/labels.hpp"

namespace intentbench {

enum class DistanceMetric { euclidean, cosine };

std::string_view metric_name(DistanceMetric metric);
DistanceMetric parse_metric(std::string_view name);

// Exact KNN: all training points stored verbatim, no index.
struct KnnModel {
  std::size_t k = 1;
  DistanceMetric metric = DistanceMetric::euclidean;
  std::size_t dim = 0;
  std::vector<LabeledVector> points;
};

struct KnnPrediction {
  IntentLabel label = IntentLabel::Conversation;
  std::array<int, kNumClasses> votes{};  // per-class neighbor counts, sum to k
};

KnnModel knn_fit(std::vector<LabeledVector> train, std::size_t k,
                 DistanceMetric metric);

// Majority vote among the k nearest points. Neighbor ties at equal distance
// resolve by smaller training index; vote ties by class priority.
KnnPrediction knn_predict(const KnnModel& model, const EmbeddingVector& query);

struct KSweepRow {
  std::size_t k = 0;
  std::array<double, kNumClasses> f1{};
  double macro_f1 = 0.0;
};

// Per-class F1 on the test set for every requested k. Neighbor ranking is
// computed once per query and reused across k values.
std::vector<KSweepRow> knn_k_sweep(const std::vector<LabeledVector>& train,
                                   const std::vector<LabeledVector>& test,
                                   const std::vector<std::size_t>& k_values,
                                   DistanceMetric metric);

std::string k_sweep_csv(const std::vector<KSweepRow>& rows);

void save_knn(const KnnModel& model, const std::filesystem::path& path);
KnnModel load_knn(const std::filesystem::path& path);

}  // namespace intentbench
