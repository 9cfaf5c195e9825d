#pragma once

#include <array>
#include <string_view>

#include "jacq/hough.hpp"

namespace jacq {

/// Summary statistics of one view's direction density. Positions are the
/// theta-bin index of the extremum divided by (B - 1).
struct ViewFeatures {
  double mean = 0.0;
  double min_value = 0.0;
  double min_pos = 0.0;
  double max_value = 0.0;
  double max_pos = 0.0;
  double std_dev = 0.0;

  friend bool operator==(const ViewFeatures&, const ViewFeatures&) = default;
};

inline constexpr std::size_t kViewFeatureCount = 6;
inline constexpr std::size_t kFeatureCount = 2 * kViewFeatureCount;

/// Camera A's six statistics followed by camera B's, in ViewFeatures field order.
struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Comma-separated feature names in FeatureVector order; recorded in model files.
inline constexpr std::string_view kFeatureOrder =
    "a.mean,a.min_value,a.min_pos,a.max_value,a.max_pos,a.std_dev,"
    "b.mean,b.min_value,b.min_pos,b.max_value,b.max_pos,b.std_dev";

/// Mean, population standard deviation, and extrema with smallest-index
/// tie-breaking. Throws std::invalid_argument on an empty density.
ViewFeatures extract_features(const DirectionDensity& dd);

FeatureVector combine(const ViewFeatures& a, const ViewFeatures& b);

}  // namespace jacq
