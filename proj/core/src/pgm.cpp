#include "jacq/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

namespace jacq {

namespace {

class HeaderCursor {
 public:
  explicit HeaderCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads an optionally signed decimal.
  long long next_number(const char* field) {
    skip_blank_and_comments();
    const bool negative = pos_ < bytes_.size() && bytes_[pos_] == '-';
    if (negative) ++pos_;
    const std::size_t start = pos_;
    long long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) {
        throw PgmError(PgmErrorKind::bad_header, std::string("PGM ") + field + " is too large");
      }
      ++pos_;
    }
    if (pos_ == start) {
      throw PgmError(PgmErrorKind::bad_header, std::string("PGM header: expected ") + field);
    }
    return negative ? -value : value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void consume_single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw PgmError(PgmErrorKind::bad_header, "PGM header: missing whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  void skip_blank_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw PgmError(PgmErrorKind::bad_magic, "not a binary PGM (expected magic \"P5\")");
  }
  HeaderCursor cursor(bytes);
  const long long width = cursor.next_number("width");
  const long long height = cursor.next_number("height");
  if (width < 1 || height < 1) {
    throw PgmError(PgmErrorKind::bad_dimensions, "PGM dimensions must be positive, got " +
                                                     std::to_string(width) + "x" +
                                                     std::to_string(height));
  }
  const long long maxval = cursor.next_number("maxval");
  if (maxval < 1 || maxval > 255) {
    throw PgmError(PgmErrorKind::bad_maxval,
                   "PGM maxval must be in [1, 255], got " + std::to_string(maxval));
  }
  cursor.consume_single_whitespace();

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t available = bytes.size() - cursor.position();
  if (available < count) {
    throw PgmError(PgmErrorKind::truncated, "PGM payload truncated: expected " +
                                                std::to_string(count) + " bytes, found " +
                                                std::to_string(available));
  }
  const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(cursor.position());
  return GrayImage(static_cast<int>(width), static_cast<int>(height),
                   std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(count)));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + img.size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

std::vector<std::uint8_t> write_pgm(const BinaryImage& bin) { return write_pgm(to_gray(bin)); }

GrayImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  try {
    return read_pgm(bytes);
  } catch (const PgmError& e) {
    throw PgmError(e.kind(), path.string() + ": " + e.what());
  }
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto bytes = write_pgm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace jacq
