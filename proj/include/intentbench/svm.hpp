#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "intentbench/embeddings.hpp"
#include "intentbench/labels.hpp"

namespace intentbench {

enum class ClassWeight { none, balanced };

std::string_view class_weight_name(ClassWeight cw);
ClassWeight parse_class_weight(std::string_view name);

// Only the linear kernel is supported.
struct SvmHyperparams {
  double c = 1.0;
  ClassWeight class_weight = ClassWeight::none;
};

// One-vs-rest linear SVM: one (w, b) pair per class, prediction by argmax of
// w_c . x + b_c.
struct SvmModel {
  std::size_t dim = 0;
  SvmHyperparams hp;
  std::array<std::vector<double>, kNumClasses> w;
  std::array<double, kNumClasses> b{};
};

// Per-epoch solver diagnostics for one one-vs-rest subproblem.
struct SvmEpochStats {
  double primal_objective = 0.0;
  double max_alpha_delta = 0.0;
  double max_bound_violation = 0.0;  // distance of any alpha outside [0, C*s]
};

struct SvmTrainTrace {
  std::array<std::vector<SvmEpochStats>, kNumClasses> per_class;
};

// Trains by dual coordinate descent on the hinge-loss dual, one subproblem
// per class. The bias is a regularized constant feature. Stops when the
// largest dual-variable update in an epoch drops below 1e-4, or after 1000
// epochs. Coordinate order is reshuffled each epoch from `seed`.
SvmModel svm_fit(const std::vector<LabeledVector>& train,
                 const SvmHyperparams& hp, std::uint64_t seed = 0,
                 SvmTrainTrace* trace = nullptr);

struct SvmPrediction {
  IntentLabel label = IntentLabel::Conversation;
  std::array<double, kNumClasses> scores{};
};

SvmPrediction svm_predict(const SvmModel& model, const EmbeddingVector& query);

// Inverse-frequency multipliers: s_c = n_total / (n_classes * count_c).
std::array<double, kNumClasses> class_weights_balanced(
    const std::array<std::size_t, kNumClasses>& counts);

enum class Scoring { macro_f1, weighted_f1 };

Scoring parse_scoring(std::string_view name);
std::string_view scoring_name(Scoring scoring);

struct GridSearchSpec {
  std::vector<double> c_values{0.1, 1.0, 10.0, 100.0};
  std::vector<ClassWeight> class_weights{ClassWeight::none,
                                         ClassWeight::balanced};
  std::size_t folds = 10;
  Scoring scoring = Scoring::macro_f1;
  std::uint64_t seed = 0;
};

struct GridCell {
  SvmHyperparams hp;
  double mean_score = 0.0;
  double std_score = 0.0;
};

struct GridSearchResult {
  SvmHyperparams best;
  std::vector<GridCell> table;
};

// Stratified k-fold cross validation over the full grid. Best cell is the
// highest mean score; exact ties prefer the smaller C, then class_weight
// none. Deterministic for a fixed seed.
GridSearchResult grid_search(const std::vector<LabeledVector>& train,
                             const GridSearchSpec& spec);

std::string grid_table_csv(const GridSearchResult& result);

void save_svm(const SvmModel& model, const std::filesystem::path& path);
SvmModel load_svm(const std::filesystem::path& path);

}  // namespace intentbench
