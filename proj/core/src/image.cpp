#include "jacq/image.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace jacq {

namespace {

std::size_t checked_area(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), data_(checked_area(width, height), fill) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != checked_area(width, height)) {
    throw std::invalid_argument("pixel buffer size does not match image dimensions");
  }
}

BinaryImage::BinaryImage(int width, int height)
    : width_(width), height_(height), data_(checked_area(width, height), 0) {}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != checked_area(width, height)) {
    throw std::invalid_argument("pixel buffer size does not match image dimensions");
  }
  if (std::any_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw std::invalid_argument("binary image values must be 0 or 1");
  }
}

std::size_t BinaryImage::foreground_count() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

GrayImage to_gray(const BinaryImage& bin) {
  std::vector<std::uint8_t> out(bin.size());
  std::transform(bin.pixels().begin(), bin.pixels().end(), out.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
  return GrayImage(bin.width(), bin.height(), std::move(out));
}

}  // namespace jacq
