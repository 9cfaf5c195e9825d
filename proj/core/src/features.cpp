#include "jacq/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jacq {

ViewFeatures extract_features(const DirectionDensity& dd) {
  const auto& v = dd.values;
  if (v.empty()) throw std::invalid_argument("direction density is empty");
  const std::size_t n = v.size();

  ViewFeatures f;
  std::size_t min_idx = 0;
  std::size_t max_idx = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += v[i];
    if (v[i] < v[min_idx]) min_idx = i;
    if (v[i] > v[max_idx]) max_idx = i;
  }
  f.mean = sum / static_cast<double>(n);

  double sq = 0.0;
  for (double x : v) sq += (x - f.mean) * (x - f.mean);
  f.std_dev = std::sqrt(sq / static_cast<double>(n));

  const double span = n > 1 ? static_cast<double>(n - 1) : 1.0;
  f.min_value = v[min_idx];
  f.max_value = v[max_idx];
  f.min_pos = n > 1 ? static_cast<double>(min_idx) / span : 0.0;
  f.max_pos = n > 1 ? static_cast<double>(max_idx) / span : 0.0;

  // Rounding in the mean must not break min <= mean <= max or make a flat
  // density look spread out.
  if (f.min_value == f.max_value) {
    f.mean = f.min_value;
    f.std_dev = 0.0;
  }
  f.mean = std::clamp(f.mean, f.min_value, f.max_value);
  return f;
}

FeatureVector combine(const ViewFeatures& a, const ViewFeatures& b) {
  return FeatureVector{{a.mean, a.min_value, a.min_pos, a.max_value, a.max_pos, a.std_dev,
                        b.mean, b.min_value, b.min_pos, b.max_value, b.max_pos, b.std_dev}};
}

}  // namespace jacq
