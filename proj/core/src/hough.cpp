#include "jacq/hough.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jacq {

HoughAccumulator::HoughAccumulator(int theta_bins, int rho_max)
    : theta_bins_(theta_bins), rho_max_(rho_max) {
  if (theta_bins < 2) {
    throw std::invalid_argument("theta_bins must be at least 2, got " + std::to_string(theta_bins));
  }
  if (rho_max < 0) throw std::invalid_argument("rho_max must be non-negative");
  counts_.assign(static_cast<std::size_t>(theta_bins) * rho_bins(), 0);
}

double HoughAccumulator::theta(int bin) const noexcept {
  return static_cast<double>(bin) * std::numbers::pi / static_cast<double>(theta_bins_);
}

std::uint64_t HoughAccumulator::total_votes() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

int hough_rho_max(int width, int height) {
  const double diag = std::sqrt(static_cast<double>(width) * width + static_cast<double>(height) * height);
  return static_cast<int>(std::ceil(diag));
}

HoughAccumulator hough_transform(const BinaryImage& bin, int theta_bins) {
  HoughAccumulator acc(theta_bins, hough_rho_max(bin.width(), bin.height()));
  const double offset = acc.rho_max();

  std::vector<double> cos_t(theta_bins);
  std::vector<double> sin_t(theta_bins);
  for (int j = 0; j < theta_bins; ++j) {
    cos_t[j] = std::cos(acc.theta(j));
    sin_t[j] = std::sin(acc.theta(j));
  }

  for (int y = 0; y < bin.height(); ++y) {
    for (int x = 0; x < bin.width(); ++x) {
      if (!bin(x, y)) continue;
      for (int j = 0; j < theta_bins; ++j) {
        const double rho = x * cos_t[j] + y * sin_t[j];
        const auto r = static_cast<int>(std::round(rho + offset));
        ++acc(j, r);
      }
    }
  }
  return acc;
}

DirectionDensity direction_density(const HoughAccumulator& acc) {
  DirectionDensity dd;
  dd.values.resize(acc.theta_bins());
  for (int j = 0; j < acc.theta_bins(); ++j) {
    std::uint64_t energy = 0;
    for (int r = 0; r < acc.rho_bins(); ++r) {
      const std::uint64_t c = acc(j, r);
      energy += c * c;
    }
    dd.values[j] = static_cast<double>(energy);
  }
  return dd;
}

}  // namespace jacq
