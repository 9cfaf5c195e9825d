#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jacq/corpus.hpp"
#include "jacq/features.hpp"
#include "jacq/hough.hpp"
#include "jacq/image.hpp"
#include "jacq/mlp.hpp"
#include "jacq/preproc.hpp"

namespace jacq {

struct PipelineConfig {
  PreprocConfig preproc;
  int theta_bins = kDefaultThetaBins;
  double decision_threshold = 0.5;
  std::string model_path;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct Decision {
  std::uint64_t sequence_id = 0;
  double probability = 0.0;
  bool is_defect = false;
  FeatureVector features;
  std::int64_t latency_micros = 0;
};

/// Defect iff p >= threshold; a tie goes to inspection.
inline bool is_defect(double probability, double threshold) noexcept {
  return probability >= threshold;
}

/// Anything that maps a feature vector to a defect probability.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual double probability(const FeatureVector& fv) const = 0;
};

class MlpClassifier final : public Classifier {
 public:
  /// Throws std::invalid_argument unless the model takes the 12 pair features.
  explicit MlpClassifier(MlpModel model);
  double probability(const FeatureVector& fv) const override { return forward(model_, fv); }
  const MlpModel& model() const noexcept { return model_; }

 private:
  MlpModel model_;
};

/// Intermediate products for one camera view.
struct ViewAnalysis {
  BinaryImage skeleton;
  DirectionDensity density;
  ViewFeatures features;
};

ViewAnalysis analyze_view(const GrayImage& img, const PipelineConfig& cfg);

/// Both views through the identical chain, combined A then B.
FeatureVector pair_features(const FramePair& pair, const PipelineConfig& cfg);

Decision detect(const FramePair& pair, const Classifier& classifier, const PipelineConfig& cfg,
                std::uint64_t sequence_id = 0);
Decision detect(const FramePair& pair, const MlpModel& model, const PipelineConfig& cfg,
                std::uint64_t sequence_id = 0);

// ---------------------------------------------------------------------------
// Streaming

struct SequencedPair {
  std::uint64_t sequence_id = 0;
  FramePair frames;
};

class FrameSource {
 public:
  virtual ~FrameSource() = default;
  /// nullopt at end of stream.
  virtual std::optional<SequencedPair> next() = 0;
};

/// In-memory source; sequence ids are the vector positions.
class VectorSource final : public FrameSource {
 public:
  explicit VectorSource(std::vector<FramePair> pairs) : pairs_(std::move(pairs)) {}
  std::optional<SequencedPair> next() override;

 private:
  std::vector<FramePair> pairs_;
  std::size_t pos_ = 0;
};

/// Reads a corpus directory lazily, one pair per call, in labels.csv order.
/// Sequence ids are the corpus indices.
class CorpusDirSource final : public FrameSource {
 public:
  explicit CorpusDirSource(std::filesystem::path dir);
  std::optional<SequencedPair> next() override;

 private:
  std::filesystem::path dir_;
  std::vector<CorpusEntry> entries_;
  std::size_t pos_ = 0;
};

class DecisionSink {
 public:
  virtual ~DecisionSink() = default;
  virtual void on_decision(const Decision& decision) = 0;
  virtual void on_stop(std::uint64_t sequence_id) = 0;
};

/// Line-delimited JSON: {"seq":n,"p":x,"defect":bool,"latency_us":n} per
/// decision and {"stop_at":n} for the stop event.
class JsonLinesSink final : public DecisionSink {
 public:
  explicit JsonLinesSink(std::ostream& out) : out_(out) {}
  void on_decision(const Decision& decision) override;
  void on_stop(std::uint64_t sequence_id) override;

 private:
  std::ostream& out_;
};

struct StreamOptions {
  /// Halt at the first defect decision. Off for offline evaluation (--no-stop).
  bool stop_on_defect = true;
};

struct StreamSummary {
  std::size_t decisions = 0;
  std::size_t defects = 0;
  std::optional<std::uint64_t> stop_at;
};

/// Raised when a frame cannot be read or processed; names the pair.
class StreamError : public std::runtime_error {
 public:
  StreamError(std::uint64_t sequence_id, const std::string& what)
      : std::runtime_error("frame pair " + std::to_string(sequence_id) + ": " + what),
        sequence_id_(sequence_id) {}
  std::uint64_t sequence_id() const noexcept { return sequence_id_; }

 private:
  std::uint64_t sequence_id_;
};

/// One decision per pair in source order. With stop_on_defect, the first
/// defect emits a stop event and no further pair is read.
StreamSummary run_stream(FrameSource& source, const Classifier& classifier,
                         const PipelineConfig& cfg, DecisionSink& sink,
                         const StreamOptions& options = {});

// ---------------------------------------------------------------------------
// Evaluation and benchmarking

struct LatencyStats {
  std::size_t count = 0;
  double min_us = 0.0;
  double mean_us = 0.0;
  double p95_us = 0.0;  // nearest-rank percentile
  double max_us = 0.0;
};

/// Throws std::invalid_argument on an empty sample.
LatencyStats latency_stats(std::span<const std::int64_t> micros);

struct EvalReport {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t true_negatives = 0;
  std::size_t false_negatives = 0;
  double detection_rate = 0.0;    // TP / (TP + FN)
  double false_alarm_rate = 0.0;  // FP / (FP + TN)
  LatencyStats latency;
};

/// Confusion counts of decisions against labels (same length). A rate whose
/// denominator is zero is reported as 0.
EvalReport tally(std::span<const int> labels, std::span<const Decision> decisions);

/// Runs detect on every item. decisions_out, when given, receives them in order.
EvalReport evaluate(std::span<const CorpusItem> corpus, const Classifier& classifier,
                    const PipelineConfig& cfg, std::vector<Decision>* decisions_out = nullptr);

/// Per-pair end-to-end latency over `repetitions` passes of the corpus.
/// Throws std::invalid_argument if repetitions < 1 or the corpus is empty.
LatencyStats benchmark(std::span<const FramePair> pairs, const Classifier& classifier,
                       const PipelineConfig& cfg, int repetitions);

std::string to_json(const Decision& decision);
std::string to_json(const EvalReport& report);
std::string to_json(const LatencyStats& stats);

}  // namespace jacq
