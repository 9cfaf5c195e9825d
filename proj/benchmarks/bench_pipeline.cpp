#include <benchmark/benchmark.h>

#include "jacq/pipeline.hpp"
#include "jacq/synthgen.hpp"

namespace jacq {
namespace {

GrayImage frame(int size) {
  SynthSpec s;
  s.width = s.height = size;
  return generate(s).frames.a;
}

MlpModel small_model() {
  std::vector<LabeledSample> samples;
  for (const auto& it : make_corpus(SynthSpec{}, 40, 0.5, 1))
    samples.push_back({pair_features(it.frames, PipelineConfig{}), it.label});
  return train(samples, TrainConfig{}).model;
}

void BM_Preprocess(benchmark::State& state) {
  const GrayImage img = frame(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(preprocess(img, PreprocConfig{}));
}
BENCHMARK(BM_Preprocess)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Hough(benchmark::State& state) {
  const BinaryImage skel = preprocess(frame(static_cast<int>(state.range(0))), PreprocConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(hough_transform(skel));
  state.counters["skeleton_px"] = static_cast<double>(skel.foreground_count());
}
BENCHMARK(BM_Hough)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Detect(benchmark::State& state) {
  SynthSpec s;
  s.width = s.height = static_cast<int>(state.range(0));
  const FramePair pair = generate(s).frames;
  const MlpClassifier clf(small_model());
  for (auto _ : state) benchmark::DoNotOptimize(detect(pair, clf, PipelineConfig{}));
}
BENCHMARK(BM_Detect)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Train(benchmark::State& state) {
  std::vector<LabeledSample> samples;
  for (const auto& it : make_corpus(SynthSpec{}, 100, 0.5, 1))
    samples.push_back({pair_features(it.frames, PipelineConfig{}), it.label});
  for (auto _ : state) benchmark::DoNotOptimize(train(samples, TrainConfig{}));
}
BENCHMARK(BM_Train)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace jacq

BENCHMARK_MAIN();
