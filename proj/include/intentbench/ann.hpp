#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "intentbench/embeddings.hpp"
#include "intentbench/labels.hpp"

namespace intentbench {

// Per-feature min-max scaling fitted on the training set. At inference,
// values outside the fitted range clamp to [0, 1]; constant features map
// to 0.
struct MinMaxScaler {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t dim() const { return min.size(); }
};

MinMaxScaler scaler_fit(const std::vector<LabeledVector>& train);
std::vector<double> scaler_apply(const MinMaxScaler& scaler,
                                 const std::vector<double>& v);

std::array<double, kNumClasses> one_hot(IntentLabel label);

// Hidden layer widths; input width comes from the data and the output is
// always kNumClasses with softmax. Hidden layers use ReLU.
struct AnnArchitecture {
  std::vector<std::size_t> hidden{16, 8};
};

struct TrainConfig {
  double learning_rate = 0.01;
  std::size_t max_epochs = 500;
  std::size_t batch_size = 64;
  std::size_t patience = 25;  // epochs without validation-accuracy improvement
  std::uint64_t seed = 0;
};

// Dense layer, weights stored row-major as W[out][in].
struct AnnLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> W;  // out * in
  std::vector<double> b;  // out
};

struct AnnModel {
  MinMaxScaler scaler;
  std::vector<AnnLayer> layers;
};

struct EpochRecord {
  double train_loss = 0.0;
  double val_accuracy = 0.0;
};

struct AnnTrainResult {
  AnnModel model;  // weights from the best-validation-accuracy epoch
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;  // index into history
};

// Mini-batch training with Adam (beta1=0.9, beta2=0.999, eps=1e-8) on
// categorical cross-entropy over softmax outputs. Stops at max_epochs or
// once validation accuracy has not improved for `patience` consecutive
// epochs; the returned weights are from the best epoch. Deterministic for a
// fixed seed.
AnnTrainResult ann_fit(const std::vector<LabeledVector>& train,
                       const std::vector<LabeledVector>& validation,
                       const AnnArchitecture& arch, const TrainConfig& cfg);

struct AnnPrediction {
  IntentLabel label = IntentLabel::Conversation;
  std::array<double, kNumClasses> probabilities{};
};

AnnPrediction ann_predict(const AnnModel& model, const EmbeddingVector& query);

void save_ann(const AnnModel& model, const std::filesystem::path& path);
AnnModel load_ann(const std::filesystem::path& path);

// Low-level pieces shared by the trainer and the gradient tests. Inputs are
// already scaled; y holds class indices.
struct AnnBatch {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
};

std::vector<AnnLayer> ann_init_layers(std::size_t input_dim,
                                      const AnnArchitecture& arch,
                                      std::uint64_t seed);

std::array<double, kNumClasses> ann_forward(const std::vector<AnnLayer>& layers,
                                            const std::vector<double>& x);

// Mean cross-entropy over the batch, log clamped at 1e-12.
double ann_loss(const std::vector<AnnLayer>& layers, const AnnBatch& batch);

// Analytic gradients of ann_loss with respect to every weight and bias,
// returned in layer shape.
std::vector<AnnLayer> ann_gradients(const std::vector<AnnLayer>& layers,
                                    const AnnBatch& batch);

}  // namespace intentbench
