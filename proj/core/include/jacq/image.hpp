#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace jacq {

/// 8-bit grayscale raster, row-major, origin at the top-left pixel.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  /// Throws std::invalid_argument unless data.size() == width * height.
  GrayImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t operator()(int x, int y) const noexcept {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t& operator()(int x, int y) noexcept {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const std::uint8_t> pixels() const noexcept { return data_; }
  std::span<std::uint8_t> pixels() noexcept { return data_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Two-level raster: 0 is background, 1 is foreground.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height);
  /// Throws std::invalid_argument on a size mismatch or any value other than 0/1.
  BinaryImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::uint8_t operator()(int x, int y) const noexcept {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  void set(int x, int y, bool on) noexcept {
    data_[static_cast<std::size_t>(y) * width_ + x] = on ? 1 : 0;
  }
  /// Out-of-range coordinates read as background.
  std::uint8_t at_or_zero(int x, int y) const noexcept {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return 0;
    return (*this)(x, y);
  }

  std::span<const std::uint8_t> pixels() const noexcept { return data_; }
  std::size_t foreground_count() const noexcept;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Foreground becomes 255, background 0.
GrayImage to_gray(const BinaryImage& bin);

/// Simultaneous views of one fabric region from the two cameras.
struct FramePair {
  GrayImage a;
  GrayImage b;

  friend bool operator==(const FramePair&, const FramePair&) = default;
};

}  // namespace jacq
