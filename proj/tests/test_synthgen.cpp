#include <gtest/gtest.h>

#include <cmath>

#include "jacq/pipeline.hpp"
#include "jacq/synthgen.hpp"

namespace jacq {
namespace {

std::size_t dark_pixels(const GrayImage& img, double ground) {
  std::size_t n = 0;
  for (std::uint8_t v : img.pixels()) n += v < ground;
  return n;
}

TEST(Generate, Deterministic) {
  SynthSpec s;
  s.seed = 42;
  s.defect = DefectType::blob;
  const auto a = generate(s);
  const auto b = generate(s);
  EXPECT_EQ(a.frames, b.frames);
  s.seed = 43;
  EXPECT_NE(generate(s).frames, a.frames);
}

TEST(Generate, IdenticalViewsWhenCamerasAgree) {
  SynthSpec s;
  s.noise_sigma = 0.0;
  s.pattern_angle_b = s.pattern_angle_a;
  s.brightness_b = s.brightness_a;
  const auto g = generate(s);
  EXPECT_EQ(g.frames.a, g.frames.b);
  EXPECT_EQ(g.label, 0);
}

TEST(Generate, ViewsDifferByDefault) {
  const auto g = generate(SynthSpec{});
  EXPECT_NE(g.frames.a, g.frames.b);
  EXPECT_EQ(g.frames.a.width(), 128);
  EXPECT_EQ(g.frames.b.height(), 128);
}

TEST(Generate, MissingThreadRemovesDarkPixels) {
  SynthSpec clean;
  clean.noise_sigma = 0.0;
  clean.seed = 5;
  SynthSpec flawed = clean;
  flawed.defect = DefectType::missing_thread;
  const auto c = generate(clean);
  const auto f = generate(flawed);
  const double ground_a = clean.ground_level * clean.brightness_a;
  const double ground_b = clean.ground_level * clean.brightness_b;
  // Frozen from counting both renders.
  EXPECT_EQ(dark_pixels(c.frames.a, ground_a), 3840u);
  EXPECT_EQ(dark_pixels(f.frames.a, ground_a), 2944u);
  EXPECT_EQ(dark_pixels(c.frames.b, ground_b), 3878u);
  EXPECT_EQ(dark_pixels(f.frames.b, ground_b), 2973u);
  EXPECT_LT(dark_pixels(f.frames.a, ground_a), dark_pixels(c.frames.a, ground_a));
  EXPECT_LT(dark_pixels(f.frames.b, ground_b), dark_pixels(c.frames.b, ground_b));
}

TEST(Generate, MissingThreadFewerDarkPixelsAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SynthSpec clean;
    clean.noise_sigma = 0.0;
    clean.seed = seed;
    SynthSpec flawed = clean;
    flawed.defect = DefectType::missing_thread;
    const auto c = generate(clean);
    const auto f = generate(flawed);
    EXPECT_LT(dark_pixels(f.frames.a, clean.ground_level * clean.brightness_a),
              dark_pixels(c.frames.a, clean.ground_level * clean.brightness_a))
        << "seed " << seed;
  }
}

TEST(Generate, LabelSoundness) {
  for (DefectType t : {DefectType::none, DefectType::missing_thread, DefectType::broken_line,
                       DefectType::blob, DefectType::misweave}) {
    SynthSpec s;
    s.defect = t;
    EXPECT_EQ(generate(s).label, t == DefectType::none ? 0 : 1);
  }
}

TEST(Generate, ValidatesSpec) {
  SynthSpec s;
  s.thread_thickness = 40.0;
  EXPECT_THROW(generate(s), std::invalid_argument);
  s = SynthSpec{};
  s.warp_period = 3.0;
  EXPECT_THROW(generate(s), std::invalid_argument);
  s = SynthSpec{};
  s.defect_magnitude = 0.0;
  EXPECT_THROW(generate(s), std::invalid_argument);
  s.defect_magnitude = 1.5;
  EXPECT_THROW(generate(s), std::invalid_argument);
  s = SynthSpec{};
  s.noise_sigma = -1.0;
  EXPECT_THROW(generate(s), std::invalid_argument);
  s = SynthSpec{};
  s.width = 0;
  EXPECT_THROW(generate(s), std::invalid_argument);
}

TEST(DefectType, NamesRoundTrip) {
  for (DefectType t : {DefectType::none, DefectType::missing_thread, DefectType::broken_line,
                       DefectType::blob, DefectType::misweave}) {
    EXPECT_EQ(parse_defect_type(to_string(t)), t);
  }
  EXPECT_THROW(parse_defect_type("hole"), std::invalid_argument);
}

TEST(Corpus, RoundedClassCounts) {
  const auto items = make_corpus(SynthSpec{}, 10, 0.5, 3);
  int defects = 0;
  for (const auto& it : items) defects += it.label;
  EXPECT_EQ(items.size(), 10u);
  EXPECT_EQ(defects, 5);
  for (int n : {1, 7, 33, 100}) {
    for (double f : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
      int k = 0;
      for (int i = 0; i < n; ++i) k += corpus_item_defective(n, f, i);
      EXPECT_EQ(k, std::lround(n * f)) << n << " " << f;
    }
  }
}

TEST(Corpus, Deterministic) {
  const auto a = make_corpus(SynthSpec{}, 6, 0.5, 9);
  const auto b = make_corpus(SynthSpec{}, 6, 0.5, 9);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].frames, b[i].frames);
    EXPECT_EQ(a[i].label, b[i].label);
    EXPECT_EQ(a[i].defect, b[i].defect);
  }
}

TEST(Corpus, ItemsIndependentOfGenerationOrder) {
  const SynthSpec base;
  const auto all = make_corpus(base, 8, 0.5, 4);
  for (int i = 7; i >= 0; --i) {
    const auto g = generate(corpus_item_spec(base, 8, 0.5, 4, i));
    EXPECT_EQ(g.frames, all[i].frames);
  }
}

TEST(Corpus, DefectTypesCycle) {
  const auto items = make_corpus(SynthSpec{}, 16, 0.5, 1);
  std::vector<DefectType> seen;
  for (const auto& it : items)
    if (it.label == 1) seen.push_back(it.defect);
  ASSERT_EQ(seen.size(), 8u);
  for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], kDefectCycle[i % 4]);
}

TEST(Corpus, JitterWithinNormalLimits) {
  const SynthSpec base;
  for (int i = 0; i < 200; ++i) {
    const SynthSpec s = corpus_item_spec(base, 200, 0.5, 7, i);
    EXPECT_GE(s.warp_period, 0.9 * base.warp_period);
    EXPECT_LE(s.warp_period, 1.1 * base.warp_period);
    EXPECT_NEAR(s.weft_period / s.warp_period, base.weft_period / base.warp_period, 1e-12);
    EXPECT_LE(std::abs(s.pattern_angle_a - base.pattern_angle_a), 2.0);
    EXPECT_NEAR(s.pattern_angle_b - s.pattern_angle_a, base.pattern_angle_b - base.pattern_angle_a,
                1e-12);
    EXPECT_GE(s.noise_sigma, 0.8 * base.noise_sigma);
    EXPECT_LE(s.noise_sigma, 1.2 * base.noise_sigma);
  }
}

TEST(Corpus, RejectsBadArguments) {
  EXPECT_THROW(make_corpus(SynthSpec{}, 0, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(make_corpus(SynthSpec{}, 4, 1.5, 1), std::invalid_argument);
  EXPECT_THROW(make_corpus(SynthSpec{}, 4, -0.1, 1), std::invalid_argument);
}

// Each defect type at full magnitude and no noise moves at least one feature
// by more than the clean class's own spread.
TEST(Corpus, DefectsVisibleAboveCleanSpread) {
  SynthSpec base;
  base.noise_sigma = 0.0;
  const PipelineConfig cfg;
  const auto clean = make_corpus(base, 40, 0.0, 11);
  std::array<double, kFeatureCount> mean{}, sd{};
  std::vector<FeatureVector> fvs;
  for (const auto& it : clean) fvs.push_back(pair_features(it.frames, cfg));
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    for (const auto& f : fvs) mean[k] += f.values[k] / fvs.size();
    for (const auto& f : fvs) sd[k] += (f.values[k] - mean[k]) * (f.values[k] - mean[k]) / fvs.size();
    sd[k] = std::sqrt(sd[k]);
  }
  for (DefectType t : kDefectCycle) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      SynthSpec s = base;
      s.seed = seed;
      const FeatureVector ok = pair_features(generate(s).frames, cfg);
      s.defect = t;
      const FeatureVector bad = pair_features(generate(s).frames, cfg);
      bool visible = false;
      for (std::size_t k = 0; k < kFeatureCount; ++k)
        visible = visible || std::abs(bad.values[k] - ok.values[k]) > sd[k];
      EXPECT_TRUE(visible) << to_string(t) << " seed " << seed;
    }
  }
}

}  // namespace
}  // namespace jacq
