#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace jacq {

/// Seeded generator whose output is identical on every standard library:
/// std::mt19937_64 is fully specified, but the std distributions are not, so
/// the uniform and normal transforms are implemented here.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64+u53+box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;
  /// Standard normal deviate.
  double normal() noexcept;

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace jacq
