#include <gtest/gtest.h>

#include <cmath>

#include "jacq/features.hpp"
#include "jacq/random.hpp"
#include "oracles/oracles.hpp"

namespace jacq {
namespace {

ViewFeatures of(std::vector<double> v) { return extract_features(DirectionDensity{std::move(v)}); }

void expect_near(const ViewFeatures& a, const ViewFeatures& b, double tol) {
  EXPECT_NEAR(a.mean, b.mean, tol);
  EXPECT_NEAR(a.min_value, b.min_value, tol);
  EXPECT_NEAR(a.min_pos, b.min_pos, tol);
  EXPECT_NEAR(a.max_value, b.max_value, tol);
  EXPECT_NEAR(a.max_pos, b.max_pos, tol);
  EXPECT_NEAR(a.std_dev, b.std_dev, tol);
}

TEST(Features, ThreeValues) {
  const ViewFeatures f = of({1, 2, 3});
  EXPECT_DOUBLE_EQ(f.mean, 2.0);
  EXPECT_EQ(f.min_value, 1.0);
  EXPECT_EQ(f.min_pos, 0.0);
  EXPECT_EQ(f.max_value, 3.0);
  EXPECT_EQ(f.max_pos, 1.0);
  EXPECT_NEAR(f.std_dev, std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(Features, ConstantTiesToFirstBin) {
  const ViewFeatures f = of({5, 5, 5, 5});
  EXPECT_EQ(f.mean, 5.0);
  EXPECT_EQ(f.min_value, 5.0);
  EXPECT_EQ(f.max_value, 5.0);
  EXPECT_EQ(f.min_pos, 0.0);
  EXPECT_EQ(f.max_pos, 0.0);
  EXPECT_EQ(f.std_dev, 0.0);
}

TEST(Features, SingleBinPositionsZero) {
  const ViewFeatures f = of({4});
  EXPECT_EQ(f.min_pos, 0.0);
  EXPECT_EQ(f.max_pos, 0.0);
  EXPECT_EQ(f.std_dev, 0.0);
}

TEST(Features, EmptyRejected) { EXPECT_THROW(of({}), std::invalid_argument); }

TEST(Features, MatchesTwoPassOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(180);
    for (double& x : v) x = rng.uniform(0.0, 1000.0);
    if (trial % 5 == 0)
      for (double& x : v) x = std::floor(x / 100.0);  // repeated values
    expect_near(of(v), oracle::stats(v), 1e-9);
  }
}

TEST(Features, Invariants) {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1 + rng.below(200));
    for (double& x : v) x = rng.uniform() < 0.3 ? 7.0 : rng.uniform(0.0, 100.0);
    const ViewFeatures f = of(v);
    EXPECT_LE(f.min_value, f.mean);
    EXPECT_LE(f.mean, f.max_value);
    EXPECT_GE(f.std_dev, 0.0);
    EXPECT_GE(f.min_pos, 0.0);
    EXPECT_LE(f.min_pos, 1.0);
    EXPECT_GE(f.max_pos, 0.0);
    EXPECT_LE(f.max_pos, 1.0);
    EXPECT_EQ(f.std_dev == 0.0, f.min_value == f.max_value);
  }
}

TEST(Features, ScaleEquivariance) {
  Rng rng(33);
  std::vector<double> v(90);
  for (double& x : v) x = rng.uniform(0.0, 50.0);
  const ViewFeatures f = of(v);
  for (double c : {0.5, 3.0, 1024.0}) {
    std::vector<double> w = v;
    for (double& x : w) x *= c;
    const ViewFeatures g = of(w);
    EXPECT_NEAR(g.mean, c * f.mean, 1e-9 * c * f.mean);
    EXPECT_NEAR(g.std_dev, c * f.std_dev, 1e-9 * c * f.std_dev);
    EXPECT_DOUBLE_EQ(g.min_value, c * f.min_value);
    EXPECT_DOUBLE_EQ(g.max_value, c * f.max_value);
    EXPECT_EQ(g.min_pos, f.min_pos);
    EXPECT_EQ(g.max_pos, f.max_pos);
  }
}

TEST(Features, MonotoneTransformKeepsPositions) {
  Rng rng(34);
  std::vector<double> v(120);
  for (double& x : v) x = std::floor(rng.uniform(0.0, 20.0));  // plenty of ties
  const ViewFeatures f = of(v);
  std::vector<double> w = v;
  for (double& x : w) x = std::exp(x / 3.0) + x * x;
  const ViewFeatures g = of(w);
  EXPECT_EQ(g.min_pos, f.min_pos);
  EXPECT_EQ(g.max_pos, f.max_pos);
}

TEST(Combine, OrderAndSymmetry) {
  const ViewFeatures a{1, 2, 0.25, 3, 0.75, 4};
  const ViewFeatures b{5, 6, 0.5, 7, 1.0, 8};
  const FeatureVector ab = combine(a, b);
  const FeatureVector ba = combine(b, a);
  const std::array<double, 12> expected{1, 2, 0.25, 3, 0.75, 4, 5, 6, 0.5, 7, 1.0, 8};
  EXPECT_EQ(ab.values, expected);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(ab.values[i], ba.values[i + 6]);
    EXPECT_EQ(ab.values[i + 6], ba.values[i]);
  }
  const FeatureVector aa = combine(a, a);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(aa.values[i], aa.values[i + 6]);
}

}  // namespace
}  // namespace jacq
