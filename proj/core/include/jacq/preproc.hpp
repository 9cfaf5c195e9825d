#pragma once

#include <cstdint>
#include <vector>

#include "jacq/image.hpp"

namespace jacq {

/// Square convolution kernel of odd size, row-major weights.
class Kernel {
 public:
  /// Throws std::invalid_argument unless size is odd, positive and
  /// weights.size() == size * size.
  Kernel(int size, std::vector<double> weights);

  int size() const noexcept { return size_; }
  int radius() const noexcept { return size_ / 2; }
  double operator()(int row, int col) const noexcept { return weights_[row * size_ + col]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  int size_;
  std::vector<double> weights_;
};

enum class BinarizeMethod { otsu, fixed };

struct PreprocConfig {
  double gaussian_sigma = 1.0;
  int gaussian_radius = 2;
  BinarizeMethod binarize_method = BinarizeMethod::otsu;
  int fixed_threshold = 128;
  /// Drops the Gaussian stage; used for the noise-filter ablation.
  bool skip_noise_filter = false;
};

/// Normalized isotropic Gaussian of size 2*radius+1.
Kernel gaussian_kernel(double sigma, int radius);

/// Edge-replicated 2D convolution; results rounded to nearest and clamped to [0, 255].
GrayImage convolve(const GrayImage& img, const Kernel& kernel);

/// |4-neighbour Laplacian| with edge replication, clamped to 255.
GrayImage laplacian(const GrayImage& img);

/// Threshold maximizing the between-class variance of the 256-bin histogram,
/// smallest threshold on ties. Pixels >= threshold are foreground. A
/// degenerate histogram (every candidate has zero variance) yields 256, so
/// every pixel becomes background.
int otsu_threshold(const GrayImage& img);

BinaryImage binarize(const GrayImage& img, const PreprocConfig& cfg);

/// Zhang-Suen thinning to a fixed point. Any 2x2 foreground block left behind
/// is broken up so the skeleton is strictly one pixel thick.
BinaryImage thin(const BinaryImage& bin);

/// gaussian -> laplacian -> binarize -> thin.
BinaryImage preprocess(const GrayImage& img, const PreprocConfig& cfg);

void validate(const PreprocConfig& cfg);

}  // namespace jacq
