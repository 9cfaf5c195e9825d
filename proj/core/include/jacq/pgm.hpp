#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jacq/image.hpp"

namespace jacq {

enum class PgmErrorKind {
  bad_magic,
  bad_header,      // missing or non-numeric header token
  bad_dimensions,  // width or height not positive
  bad_maxval,      // maxval outside [1, 255]
  truncated,       // fewer than width*height payload bytes
};

class PgmError : public std::runtime_error {
 public:
  PgmError(PgmErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  PgmErrorKind kind() const noexcept { return kind_; }

 private:
  PgmErrorKind kind_;
};

/// Parses a binary P5 PGM. Pixel values are returned as stored; no maxval
/// rescaling is applied.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

/// Canonical P5 encoding: "P5\n<w> <h>\n255\n" followed by the raw pixels.
std::vector<std::uint8_t> write_pgm(const GrayImage& img);
std::vector<std::uint8_t> write_pgm(const BinaryImage& bin);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& img);

}  // namespace jacq
