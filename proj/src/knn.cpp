#include "intentbench/knn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "intentbench/errors.hpp"
#include "intentbench/eval.hpp"

namespace intentbench {

namespace {

using json = nlohmann::json;

// Squared euclidean; the ranking is what matters.
double euclidean_sq(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    sum += d * d;
  }
  return sum;
}

double cosine_distance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    dot += a[j] * b[j];
    na += a[j] * a[j];
    nb += b[j] * b[j];
  }
  if (na == 0.0 || nb == 0.0) return 1.0;  // zero vector: no similarity
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

double distance(DistanceMetric metric, const std::vector<double>& a,
                const std::vector<double>& b) {
  return metric == DistanceMetric::euclidean ? euclidean_sq(a, b)
                                             : cosine_distance(a, b);
}

// (distance, training index) for every training point, sorted ascending;
// equal distances resolve by the smaller index.
std::vector<std::pair<double, std::size_t>> ranked_neighbors(
    const KnnModel& model, const EmbeddingVector& query) {
  if (query.dim() != model.dim) throw DimMismatch(model.dim, query.dim());
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(model.points.size());
  for (std::size_t i = 0; i < model.points.size(); ++i) {
    ranked.emplace_back(distance(model.metric, model.points[i].vec.values,
                                 query.values),
                        i);
  }
  std::sort(ranked.begin(), ranked.end());
  return ranked;
}

KnnPrediction vote_prefix(const KnnModel& model,
                          const std::vector<std::pair<double, std::size_t>>& ranked,
                          std::size_t k) {
  KnnPrediction pred;
  for (std::size_t i = 0; i < k; ++i) {
    ++pred.votes[label_index(model.points[ranked[i].second].label)];
  }
  pred.label = argmax_label(pred.votes);
  return pred;
}

}  // namespace

std::string_view metric_name(DistanceMetric metric) {
  return metric == DistanceMetric::euclidean ? "euclidean" : "cosine";
}

DistanceMetric parse_metric(std::string_view name) {
  if (name == "euclidean") return DistanceMetric::euclidean;
  if (name == "cosine") return DistanceMetric::cosine;
  throw Error(ErrorCategory::config,
              "unknown metric \"" + std::string(name) + "\"");
}

KnnModel knn_fit(std::vector<LabeledVector> train, std::size_t k,
                 DistanceMetric metric) {
  if (train.empty()) {
    throw Error(ErrorCategory::train, "knn training set is empty");
  }
  if (k < 1) throw Error(ErrorCategory::config, "k must be at least 1");
  if (k > train.size()) throw KTooLarge(k, train.size());
  const std::size_t dim = train.front().vec.dim();
  for (const auto& p : train) {
    if (p.vec.dim() != dim) throw DimMismatch(dim, p.vec.dim());
  }
  return KnnModel{k, metric, dim, std::move(train)};
}

KnnPrediction knn_predict(const KnnModel& model, const EmbeddingVector& query) {
  return vote_prefix(model, ranked_neighbors(model, query), model.k);
}

std::vector<KSweepRow> knn_k_sweep(const std::vector<LabeledVector>& train,
                                   const std::vector<LabeledVector>& test,
                                   const std::vector<std::size_t>& k_values,
                                   DistanceMetric metric) {
  if (k_values.empty()) {
    throw Error(ErrorCategory::config, "k sweep needs at least one k value");
  }
  const std::size_t max_k =
      *std::max_element(k_values.begin(), k_values.end());
  auto model = knn_fit(train, max_k, metric);

  std::vector<IntentLabel> truth;
  truth.reserve(test.size());
  for (const auto& t : test) truth.push_back(t.label);

  std::vector<std::vector<IntentLabel>> predicted(
      k_values.size(), std::vector<IntentLabel>());
  for (auto& p : predicted) p.reserve(test.size());

  for (const auto& t : test) {
    const auto ranked = ranked_neighbors(model, t.vec);
    for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
      predicted[ki].push_back(vote_prefix(model, ranked, k_values[ki]).label);
    }
  }

  std::vector<KSweepRow> rows;
  rows.reserve(k_values.size());
  for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
    const auto report = f1_scores(confusion(truth, predicted[ki]));
    KSweepRow row;
    row.k = k_values[ki];
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      row.f1[c] = report.per_class[c].f1;
    }
    row.macro_f1 = report.macro_f1;
    rows.push_back(row);
  }
  return rows;
}

std::string k_sweep_csv(const std::vector<KSweepRow>& rows) {
  std::ostringstream out;
  out << "k,f1_conversation,f1_services,f1_document_translation,f1_macro\n";
  out.precision(6);
  out << std::fixed;
  for (const auto& row : rows) {
    out << row.k << ',' << row.f1[0] << ',' << row.f1[1] << ',' << row.f1[2]
        << ',' << row.macro_f1 << '\n';
  }
  return out.str();
}

void save_knn(const KnnModel& model, const std::filesystem::path& path) {
  json points = json::array();
  for (const auto& p : model.points) {
    json jp;
    jp["values"] = p.vec.values;
    jp["label"] = std::string(label_name(p.label));
    points.push_back(std::move(jp));
  }
  json j;
  j["schema_version"] = 1;
  j["k"] = model.k;
  j["metric"] = std::string(metric_name(model.metric));
  j["dim"] = model.dim;
  j["points"] = std::move(points);

  std::ofstream out(path, std::ios::binary);
  out << j.dump();
  if (!out) throw Error(ErrorCategory::data, "cannot write " + path.string());
}

KnnModel load_knn(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::data, "cannot open " + path.string());
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || j.value("schema_version", 0) != 1) {
    throw Error(ErrorCategory::data,
                "not a knn model file: " + path.string());
  }
  std::vector<LabeledVector> points;
  for (const auto& jp : j["points"]) {
    LabeledVector p;
    p.vec.values = jp["values"].get<std::vector<double>>();
    const auto label = parse_label(jp["label"].get<std::string>());
    if (!label) throw UnknownLabel(jp["label"].get<std::string>());
    p.label = *label;
    points.push_back(std::move(p));
  }
  return knn_fit(std::move(points), j["k"].get<std::size_t>(),
                 parse_metric(j["metric"].get<std::string>()));
}

}  // namespace intentbench
