#pragma once

#include <cstdint>
#include <vector>

#include "jacq/image.hpp"

namespace jacq {

/// (theta, rho) vote table. Theta bin j covers angle j*pi/B; rho bin r holds
/// rho = r - rho_max, so rho spans [-rho_max, rho_max] in 1-pixel steps.
class HoughAccumulator {
 public:
  HoughAccumulator(int theta_bins, int rho_max);

  int theta_bins() const noexcept { return theta_bins_; }
  int rho_bins() const noexcept { return 2 * rho_max_ + 1; }
  int rho_max() const noexcept { return rho_max_; }
  double theta(int bin) const noexcept;

  std::uint32_t operator()(int theta_bin, int rho_bin) const noexcept {
    return counts_[static_cast<std::size_t>(theta_bin) * rho_bins() + rho_bin];
  }
  std::uint32_t& operator()(int theta_bin, int rho_bin) noexcept {
    return counts_[static_cast<std::size_t>(theta_bin) * rho_bins() + rho_bin];
  }

  const std::vector<std::uint32_t>& counts() const noexcept { return counts_; }
  std::uint64_t total_votes() const noexcept;

  friend bool operator==(const HoughAccumulator&, const HoughAccumulator&) = default;

 private:
  int theta_bins_;
  int rho_max_;
  std::vector<std::uint32_t> counts_;
};

/// Per-orientation collinearity energy: values[j] = sum_r counts[j][r]^2.
struct DirectionDensity {
  std::vector<double> values;
};

inline constexpr int kDefaultThetaBins = 180;

/// rho_max for a w x h image: ceil(sqrt(w^2 + h^2)).
int hough_rho_max(int width, int height);

/// Every foreground pixel (x, y) votes once per theta bin at
/// round(x cos(theta) + y sin(theta) + rho_max). Throws if theta_bins < 2.
HoughAccumulator hough_transform(const BinaryImage& bin, int theta_bins = kDefaultThetaBins);

DirectionDensity direction_density(const HoughAccumulator& acc);

}  // namespace jacq
