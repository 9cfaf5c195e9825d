#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jacq/features.hpp"

namespace jacq {

/// One-hidden-layer perceptron: tanh hidden units, one logistic output.
/// Inputs are z-scored with the training-set statistics stored in the model.
struct MlpModel {
  int input_dim = static_cast<int>(kFeatureCount);
  int hidden_dim = 8;
  std::vector<double> w1;  // hidden_dim x input_dim, row-major
  std::vector<double> b1;  // hidden_dim
  std::vector<double> w2;  // hidden_dim
  double b2 = 0.0;
  std::vector<double> feat_mean;  // input_dim
  std::vector<double> feat_std;   // input_dim, every entry > 0

  /// All weights zero, identity normalization (mean 0, std 1).
  static MlpModel zeros(int input_dim, int hidden_dim);

  /// Throws std::invalid_argument on inconsistent sizes, non-finite values or
  /// non-positive feat_std.
  void validate() const;
};

/// Gradient of the loss with the same shapes as the trainable parameters.
struct MlpGradient {
  std::vector<double> w1;
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;

  /// w1, b1, w2, b2 concatenated.
  std::vector<double> flat() const;
};

struct LabeledSample {
  FeatureVector features;
  int label = 0;  // 0 correct pattern, 1 defect
};

struct TrainConfig {
  int hidden_dim = 8;
  double learning_rate = 0.1;
  double momentum = 0.9;
  int epochs = 200;
  std::uint64_t seed = 0;
};

struct TrainResult {
  MlpModel model;
  /// loss_history[e] is the training loss before the update of epoch e; the
  /// last entry is the loss of the returned model (epochs + 1 entries).
  std::vector<double> loss_history;
};

class TrainingError : public std::runtime_error {
 public:
  TrainingError(int epoch, const std::string& what) : std::runtime_error(what), epoch_(epoch) {}
  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

enum class ModelFormatErrorKind { syntax, schema, dimension, non_finite };

class ModelFormatError : public std::runtime_error {
 public:
  ModelFormatError(ModelFormatErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ModelFormatErrorKind kind() const noexcept { return kind_; }

 private:
  ModelFormatErrorKind kind_;
};

inline constexpr double kProbabilityClamp = 1e-12;
inline constexpr double kMinFeatureStd = 1e-8;
inline constexpr int kModelSchemaVersion = 1;

/// Defect probability in (0, 1). Throws std::invalid_argument when
/// input.size() != model.input_dim.
double forward(const MlpModel& model, std::span<const double> input);
double forward(const MlpModel& model, const FeatureVector& fv);

/// Mean binary cross-entropy with p clamped to [1e-12, 1 - 1e-12].
double loss(const MlpModel& model, std::span<const LabeledSample> samples);

/// Exact gradient of loss() by backpropagation. Clamped outputs contribute zero.
MlpGradient gradient(const MlpModel& model, std::span<const LabeledSample> samples);

/// Full-batch gradient descent with momentum; deterministic in (samples, cfg).
TrainResult train(std::span<const LabeledSample> samples, const TrainConfig& cfg);

std::string save_model(const MlpModel& model);
MlpModel load_model(std::string_view text);

void save_model_file(const std::filesystem::path& path, const MlpModel& model);
MlpModel load_model_file(const std::filesystem::path& path);

}  // namespace jacq
