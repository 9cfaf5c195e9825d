#include "jacq/preproc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jacq {

Kernel::Kernel(int size, std::vector<double> weights) : size_(size), weights_(std::move(weights)) {
  if (size < 1 || size % 2 == 0) {
    throw std::invalid_argument("kernel size must be odd and positive, got " + std::to_string(size));
  }
  if (weights_.size() != static_cast<std::size_t>(size) * size) {
    throw std::invalid_argument("kernel weight count does not match size");
  }
}

Kernel gaussian_kernel(double sigma, int radius) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be positive");
  if (radius < 1) throw std::invalid_argument("gaussian radius must be at least 1");
  const int size = 2 * radius + 1;
  std::vector<double> w(static_cast<std::size_t>(size) * size);
  const double denom = 2.0 * sigma * sigma;
  double total = 0.0;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const int di = i - radius;
      const int dj = j - radius;
      const double v = std::exp(-static_cast<double>(di * di + dj * dj) / denom);
      w[static_cast<std::size_t>(i) * size + j] = v;
      total += v;
    }
  }
  for (double& v : w) v /= total;
  return Kernel(size, std::move(w));
}

namespace {

std::uint8_t round_clamp(double v) {
  const double r = std::round(v);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

std::vector<int> clamped_indices(int extent, int radius) {
  std::vector<int> idx(static_cast<std::size_t>(extent + 2 * radius));
  for (int i = 0; i < extent + 2 * radius; ++i) idx[i] = std::clamp(i - radius, 0, extent - 1);
  return idx;
}

}  // namespace

GrayImage convolve(const GrayImage& img, const Kernel& kernel) {
  const int w = img.width();
  const int h = img.height();
  const int size = kernel.size();
  if (w < size || h < size) {
    throw std::invalid_argument("image " + std::to_string(w) + "x" + std::to_string(h) +
                                " is smaller than the " + std::to_string(size) + "x" +
                                std::to_string(size) + " kernel");
  }
  const int r = kernel.radius();
  // xs[x + j] is the replicated column for output column x and kernel column j.
  const std::vector<int> xs = clamped_indices(w, r);
  const std::vector<int> ys = clamped_indices(h, r);
  const auto src = img.pixels();
  const auto& kw = kernel.weights();

  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double sum = 0.0;
      for (int i = 0; i < size; ++i) {
        const std::size_t row = static_cast<std::size_t>(ys[y + i]) * w;
        const double* krow = kw.data() + static_cast<std::size_t>(i) * size;
        for (int j = 0; j < size; ++j) sum += krow[j] * src[row + xs[x + j]];
      }
      out(x, y) = round_clamp(sum);
    }
  }
  return out;
}

GrayImage laplacian(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  if (w < 3 || h < 3) {
    throw std::invalid_argument("laplacian needs at least a 3x3 image, got " + std::to_string(w) +
                                "x" + std::to_string(h));
  }
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    const int yn = std::max(y - 1, 0);
    const int ys = std::min(y + 1, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xw = std::max(x - 1, 0);
      const int xe = std::min(x + 1, w - 1);
      const int v = 4 * img(x, y) - img(x, yn) - img(x, ys) - img(xw, y) - img(xe, y);
      out(x, y) = static_cast<std::uint8_t>(std::min(std::abs(v), 255));
    }
  }
  return out;
}

int otsu_threshold(const GrayImage& img) {
  std::array<std::uint64_t, 256> hist{};
  for (std::uint8_t v : img.pixels()) ++hist[v];

  const double total = static_cast<double>(img.size());
  double total_sum = 0.0;
  for (int v = 0; v < 256; ++v) total_sum += static_cast<double>(v) * static_cast<double>(hist[v]);

  // Candidate t splits the histogram into [0, t) and [t, 255].
  int best_t = 256;
  double best_var = 0.0;
  double n0 = 0.0;
  double sum0 = 0.0;
  for (int t = 0; t < 256; ++t) {
    if (t > 0) {
      n0 += static_cast<double>(hist[t - 1]);
      sum0 += static_cast<double>(t - 1) * static_cast<double>(hist[t - 1]);
    }
    const double n1 = total - n0;
    if (n0 == 0.0 || n1 == 0.0) continue;
    const double w0 = n0 / total;
    const double w1 = n1 / total;
    const double mu0 = sum0 / n0;
    const double mu1 = (total_sum - sum0) / n1;
    const double var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }
  return best_t;
}

BinaryImage binarize(const GrayImage& img, const PreprocConfig& cfg) {
  const int threshold =
      cfg.binarize_method == BinarizeMethod::otsu ? otsu_threshold(img) : cfg.fixed_threshold;
  std::vector<std::uint8_t> out(img.size());
  std::transform(img.pixels().begin(), img.pixels().end(), out.begin(),
                 [threshold](std::uint8_t v) { return static_cast<std::uint8_t>(v >= threshold); });
  return BinaryImage(img.width(), img.height(), std::move(out));
}

namespace {

// Zero-padded working copy so neighbourhood reads never need bounds checks.
class PaddedGrid {
 public:
  explicit PaddedGrid(const BinaryImage& bin)
      : w_(bin.width()), h_(bin.height()), stride_(w_ + 2),
        cells_(static_cast<std::size_t>(w_ + 2) * (h_ + 2), 0) {
    for (int y = 0; y < h_; ++y)
      for (int x = 0; x < w_; ++x) cells_[index(x, y)] = bin(x, y);
  }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y + 1) * stride_ + (x + 1);
  }
  std::uint8_t& operator[](std::size_t i) noexcept { return cells_[i]; }
  std::uint8_t operator[](std::size_t i) const noexcept { return cells_[i]; }

  // Neighbours P2..P9 clockwise from north.
  std::array<std::uint8_t, 8> ring(std::size_t i) const noexcept {
    const std::ptrdiff_t s = stride_;
    const auto at = [&](std::ptrdiff_t off) { return cells_[static_cast<std::size_t>(i + off)]; };
    return {at(-s), at(-s + 1), at(1), at(s + 1), at(s), at(s - 1), at(-1), at(-s - 1)};
  }

  int width() const noexcept { return w_; }
  int height() const noexcept { return h_; }

  BinaryImage to_image() const {
    BinaryImage out(w_, h_);
    for (int y = 0; y < h_; ++y)
      for (int x = 0; x < w_; ++x) out.set(x, y, cells_[index(x, y)] != 0);
    return out;
  }

 private:
  int w_, h_, stride_;
  std::vector<std::uint8_t> cells_;
};

// One Zhang-Suen subiteration; returns the number of deleted pixels.
std::size_t zhang_suen_step(PaddedGrid& grid, bool first, std::vector<std::size_t>& marked) {
  marked.clear();
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      const std::size_t i = grid.index(x, y);
      if (!grid[i]) continue;
      const auto p = grid.ring(i);  // p[0]=P2 ... p[7]=P9
      int b = 0;
      int a = 0;
      for (int k = 0; k < 8; ++k) {
        b += p[k];
        if (p[k] == 0 && p[(k + 1) % 8] == 1) ++a;
      }
      if (b < 2 || b > 6 || a != 1) continue;
      const bool c = first ? (p[0] * p[2] * p[4]) == 0 : (p[0] * p[2] * p[6]) == 0;
      const bool d = first ? (p[2] * p[4] * p[6]) == 0 : (p[0] * p[4] * p[6]) == 0;
      if (c && d) marked.push_back(i);
    }
  }
  for (std::size_t i : marked) grid[i] = 0;
  return marked.size();
}

void zhang_suen(PaddedGrid& grid) {
  std::vector<std::size_t> marked;
  for (;;) {
    const std::size_t removed = zhang_suen_step(grid, true, marked) + zhang_suen_step(grid, false, marked);
    if (removed == 0) return;
  }
}

// Deleting a pixel keeps the local topology when its foreground neighbours form
// a single 8-connected arc and at least one 4-neighbour is background.
bool is_simple(const PaddedGrid& grid, std::size_t i) {
  const auto p = grid.ring(i);
  if (p[0] && p[2] && p[4] && p[6]) return false;
  int components = 0;
  std::array<bool, 8> seen{};
  for (int start = 0; start < 8; ++start) {
    if (!p[start] || seen[start]) continue;
    ++components;
    std::array<int, 8> stack{};
    int top = 0;
    stack[top++] = start;
    seen[start] = true;
    while (top > 0) {
      const int k = stack[--top];
      // Ring neighbours k-1 and k+1 always touch.
      // Two edge neighbours two apart (e.g. N and E) touch diagonally.
      if (k % 2 == 0) {
        for (int step : {6, 2}) {
          const int n = (k + step) % 8;
          if (p[n] && !seen[n]) {
            seen[n] = true;
            stack[top++] = n;
          }
        }
      }
    }
  }
  return components == 1;
}

// Removes one pixel from every remaining 2x2 block; returns how many were removed.
std::size_t break_square_blocks(PaddedGrid& grid) {
  std::size_t removed = 0;
  for (int y = 0; y + 1 < grid.height(); ++y) {
    for (int x = 0; x + 1 < grid.width(); ++x) {
      const std::array<std::size_t, 4> block = {grid.index(x, y), grid.index(x + 1, y),
                                                grid.index(x, y + 1), grid.index(x + 1, y + 1)};
      if (!(grid[block[0]] && grid[block[1]] && grid[block[2]] && grid[block[3]])) continue;
      std::size_t victim = block[0];
      for (std::size_t candidate : block) {
        if (is_simple(grid, candidate)) {
          victim = candidate;
          break;
        }
      }
      grid[victim] = 0;
      ++removed;
    }
  }
  return removed;
}

}  // namespace

BinaryImage thin(const BinaryImage& bin) {
  if (bin.size() == 0) return bin;
  PaddedGrid grid(bin);
  do {
    zhang_suen(grid);
  } while (break_square_blocks(grid) > 0);
  return grid.to_image();
}

void validate(const PreprocConfig& cfg) {
  if (!(cfg.gaussian_sigma > 0.0)) throw std::invalid_argument("gaussian_sigma must be positive");
  if (cfg.gaussian_radius < 1) throw std::invalid_argument("gaussian_radius must be at least 1");
  if (cfg.fixed_threshold < 0 || cfg.fixed_threshold > 255) {
    throw std::invalid_argument("fixed_threshold must be in [0, 255]");
  }
}

BinaryImage preprocess(const GrayImage& img, const PreprocConfig& cfg) {
  validate(cfg);
  if (img.width() < 3 || img.height() < 3) {
    throw std::invalid_argument("preprocess needs at least a 3x3 image");
  }
  const GrayImage edges = cfg.skip_noise_filter
                              ? laplacian(img)
                              : laplacian(convolve(img, gaussian_kernel(cfg.gaussian_sigma,
                                                                        cfg.gaussian_radius)));
  return thin(binarize(edges, cfg));
}

}  // namespace jacq
