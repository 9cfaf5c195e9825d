#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "jacq/image.hpp"

namespace jacq {

enum class DefectType { none, missing_thread, broken_line, blob, misweave };

std::string_view to_string(DefectType type) noexcept;
/// Throws std::invalid_argument for an unknown name.
DefectType parse_defect_type(std::string_view name);

/// Defect kinds cycled through by make_corpus, in order.
inline constexpr DefectType kDefectCycle[] = {DefectType::missing_thread, DefectType::broken_line,
                                              DefectType::blob, DefectType::misweave};

/// Parameters of one rendered frame pair: a dark two-direction thread grid on
/// a light ground, seen by two cameras at slightly different angles.
struct SynthSpec {
  int width = 128;
  int height = 128;
  double warp_period = 64.0;
  double weft_period = 72.0;
  double thread_thickness = 4.0;  // width at half depth
  double edge_softness = 4.0;     // width of the linear shading ramp at each thread edge
  double pattern_angle_a = 0.0;  // degrees
  double pattern_angle_b = 8.0;  // degrees
  double brightness_a = 1.0;
  double brightness_b = 0.9;
  double ground_level = 235.0;
  double thread_level = 25.0;
  double noise_sigma = 3.0;
  DefectType defect = DefectType::none;
  double defect_magnitude = 1.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

/// Throws std::invalid_argument when a field is out of range.
void validate(const SynthSpec& spec);

struct GeneratedPair {
  FramePair frames;
  int label = 0;
};

/// Deterministic in spec. The defect is placed in fabric coordinates, so both
/// views show the same flaw; noise is drawn independently per view.
GeneratedPair generate(const SynthSpec& spec);

struct CorpusItem {
  FramePair frames;
  int label = 0;
  DefectType defect = DefectType::none;
};

/// Spec actually rendered for corpus item `index`: per-item seed, period and
/// angle jitter, noise jitter, and the cycled defect type.
SynthSpec corpus_item_spec(const SynthSpec& base, int n, double defect_fraction, std::uint64_t seed,
                           int index);

/// n items, round(n * defect_fraction) of them defective, spread evenly with
/// defect types cycled in kDefectCycle order.
std::vector<CorpusItem> make_corpus(const SynthSpec& base, int n, double defect_fraction,
                                    std::uint64_t seed);

/// Whether item `index` of an n-item corpus is defective.
bool corpus_item_defective(int n, double defect_fraction, int index);

}  // namespace jacq
