#include "jacq/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "jacq/pgm.hpp"

namespace jacq {

using json = nlohmann::ordered_json;

void PipelineConfig::validate() const {
  jacq::validate(preproc);
  if (theta_bins < 2) throw std::invalid_argument("theta_bins must be at least 2");
  if (!(decision_threshold > 0.0 && decision_threshold < 1.0)) {
    throw std::invalid_argument("decision_threshold must be strictly inside (0, 1)");
  }
}

MlpClassifier::MlpClassifier(MlpModel model) : model_(std::move(model)) {
  model_.validate();
  if (model_.input_dim != static_cast<int>(kFeatureCount)) {
    throw std::invalid_argument("model input_dim is " + std::to_string(model_.input_dim) +
                                ", the pipeline produces " + std::to_string(kFeatureCount) +
                                " features");
  }
}

ViewAnalysis analyze_view(const GrayImage& img, const PipelineConfig& cfg) {
  ViewAnalysis view;
  view.skeleton = preprocess(img, cfg.preproc);
  view.density = direction_density(hough_transform(view.skeleton, cfg.theta_bins));
  view.features = extract_features(view.density);
  return view;
}

FeatureVector pair_features(const FramePair& pair, const PipelineConfig& cfg) {
  return combine(analyze_view(pair.a, cfg).features, analyze_view(pair.b, cfg).features);
}

Decision detect(const FramePair& pair, const Classifier& classifier, const PipelineConfig& cfg,
                std::uint64_t sequence_id) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  Decision d;
  d.sequence_id = sequence_id;
  d.features = pair_features(pair, cfg);
  d.probability = classifier.probability(d.features);
  d.is_defect = is_defect(d.probability, cfg.decision_threshold);
  d.latency_micros =
      std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start).count();
  return d;
}

Decision detect(const FramePair& pair, const MlpModel& model, const PipelineConfig& cfg,
                std::uint64_t sequence_id) {
  return detect(pair, MlpClassifier(model), cfg, sequence_id);
}

// ---------------------------------------------------------------------------

std::optional<SequencedPair> VectorSource::next() {
  if (pos_ >= pairs_.size()) return std::nullopt;
  SequencedPair out{pos_, std::move(pairs_[pos_])};
  ++pos_;
  return out;
}

CorpusDirSource::CorpusDirSource(std::filesystem::path dir)
    : dir_(std::move(dir)), entries_(read_corpus_index(dir_)) {}

std::optional<SequencedPair> CorpusDirSource::next() {
  if (pos_ >= entries_.size()) return std::nullopt;
  const CorpusEntry& e = entries_[pos_++];
  const auto seq = static_cast<std::uint64_t>(e.index);
  try {
    return SequencedPair{seq, FramePair{read_pgm_file(frame_path(dir_, e.index, 'a')),
                                        read_pgm_file(frame_path(dir_, e.index, 'b'))}};
  } catch (const std::exception& ex) {
    throw StreamError(seq, ex.what());
  }
}

void JsonLinesSink::on_decision(const Decision& decision) { out_ << to_json(decision) << '\n'; }

void JsonLinesSink::on_stop(std::uint64_t sequence_id) {
  out_ << json{{"stop_at", sequence_id}}.dump() << '\n';
}

StreamSummary run_stream(FrameSource& source, const Classifier& classifier,
                         const PipelineConfig& cfg, DecisionSink& sink,
                         const StreamOptions& options) {
  cfg.validate();
  StreamSummary summary;
  std::optional<std::uint64_t> last_seq;
  while (auto item = source.next()) {
    if (last_seq && item->sequence_id <= *last_seq) {
      throw StreamError(item->sequence_id, "sequence ids must increase (previous was " +
                                               std::to_string(*last_seq) + ")");
    }
    last_seq = item->sequence_id;
    Decision d;
    try {
      d = detect(item->frames, classifier, cfg, item->sequence_id);
    } catch (const std::exception& ex) {
      throw StreamError(item->sequence_id, ex.what());
    }
    sink.on_decision(d);
    ++summary.decisions;
    if (d.is_defect) {
      ++summary.defects;
      if (options.stop_on_defect) {
        summary.stop_at = d.sequence_id;
        sink.on_stop(d.sequence_id);
        break;
      }
    }
  }
  return summary;
}

// ---------------------------------------------------------------------------

LatencyStats latency_stats(std::span<const std::int64_t> micros) {
  if (micros.empty()) throw std::invalid_argument("no latency samples");
  std::vector<std::int64_t> sorted(micros.begin(), micros.end());
  std::sort(sorted.begin(), sorted.end());
  LatencyStats s;
  s.count = sorted.size();
  s.min_us = static_cast<double>(sorted.front());
  s.max_us = static_cast<double>(sorted.back());
  s.mean_us = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.count);
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(s.count)));
  s.p95_us = static_cast<double>(sorted[std::max<std::size_t>(rank, 1) - 1]);
  s.mean_us = std::clamp(s.mean_us, s.min_us, s.max_us);
  return s;
}

EvalReport tally(std::span<const int> labels, std::span<const Decision> decisions) {
  if (labels.size() != decisions.size()) {
    throw std::invalid_argument("labels and decisions differ in length");
  }
  EvalReport r;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool flagged = decisions[i].is_defect;
    if (labels[i] == 1) {
      (flagged ? r.true_positives : r.false_negatives)++;
    } else {
      (flagged ? r.false_positives : r.true_negatives)++;
    }
  }
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  r.detection_rate = ratio(r.true_positives, r.true_positives + r.false_negatives);
  r.false_alarm_rate = ratio(r.false_positives, r.false_positives + r.true_negatives);
  if (!decisions.empty()) {
    std::vector<std::int64_t> lat;
    lat.reserve(decisions.size());
    for (const auto& d : decisions) lat.push_back(d.latency_micros);
    r.latency = latency_stats(lat);
  }
  return r;
}

EvalReport evaluate(std::span<const CorpusItem> corpus, const Classifier& classifier,
                    const PipelineConfig& cfg, std::vector<Decision>* decisions_out) {
  if (corpus.empty()) throw std::invalid_argument("cannot evaluate an empty corpus");
  std::vector<Decision> decisions;
  std::vector<int> labels;
  decisions.reserve(corpus.size());
  labels.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    decisions.push_back(detect(corpus[i].frames, classifier, cfg, i));
    labels.push_back(corpus[i].label);
  }
  EvalReport report = tally(labels, decisions);
  if (decisions_out) *decisions_out = std::move(decisions);
  return report;
}

LatencyStats benchmark(std::span<const FramePair> pairs, const Classifier& classifier,
                       const PipelineConfig& cfg, int repetitions) {
  if (repetitions < 1) throw std::invalid_argument("at least one repetition is required");
  if (pairs.empty()) throw std::invalid_argument("cannot benchmark an empty corpus");
  std::vector<std::int64_t> micros;
  micros.reserve(pairs.size() * static_cast<std::size_t>(repetitions));
  for (int rep = 0; rep < repetitions; ++rep) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      micros.push_back(detect(pairs[i], classifier, cfg, i).latency_micros);
    }
  }
  return latency_stats(micros);
}

namespace {

json latency_value(const LatencyStats& s) {
  return json{{"count", s.count}, {"min_us", s.min_us}, {"mean_us", s.mean_us},
              {"p95_us", s.p95_us}, {"max_us", s.max_us}};
}

}  // namespace

std::string to_json(const Decision& d) {
  return json{{"seq", d.sequence_id},
              {"p", d.probability},
              {"defect", d.is_defect},
              {"latency_us", d.latency_micros}}
      .dump();
}

std::string to_json(const EvalReport& r) {
  return json{{"true_positives", r.true_positives},
              {"false_positives", r.false_positives},
              {"true_negatives", r.true_negatives},
              {"false_negatives", r.false_negatives},
              {"detection_rate", r.detection_rate},
              {"false_alarm_rate", r.false_alarm_rate},
              {"latency", latency_value(r.latency)}}
      .dump(2);
}

std::string to_json(const LatencyStats& s) { return latency_value(s).dump(2); }

}  // namespace jacq
