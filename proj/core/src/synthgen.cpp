#include "jacq/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "jacq/random.hpp"

namespace jacq {

std::string_view to_string(DefectType type) noexcept {
  switch (type) {
    case DefectType::none: return "none";
    case DefectType::missing_thread: return "missing_thread";
    case DefectType::broken_line: return "broken_line";
    case DefectType::blob: return "blob";
    case DefectType::misweave: return "misweave";
  }
  return "none";
}

DefectType parse_defect_type(std::string_view name) {
  for (DefectType t : {DefectType::none, DefectType::missing_thread, DefectType::broken_line,
                       DefectType::blob, DefectType::misweave}) {
    if (to_string(t) == name) return t;
  }
  throw std::invalid_argument("unknown defect type '" + std::string(name) + "'");
}

void validate(const SynthSpec& s) {
  if (s.width < 8 || s.height < 8) throw std::invalid_argument("synthetic frames must be at least 8x8");
  if (!(s.thread_thickness >= 1.0)) throw std::invalid_argument("thread_thickness must be >= 1");
  if (!(s.edge_softness >= 1.0)) throw std::invalid_argument("edge_softness must be >= 1");
  if (!(s.warp_period >= 4.0) || !(s.weft_period >= 4.0)) {
    throw std::invalid_argument("warp_period and weft_period must be >= 4");
  }
  if (s.warp_period < 2.0 * s.thread_thickness || s.weft_period < 2.0 * s.thread_thickness) {
    throw std::invalid_argument("periods must be at least twice the thread thickness");
  }
  if (!(s.noise_sigma >= 0.0)) throw std::invalid_argument("noise_sigma must be >= 0");
  if (!(s.brightness_a > 0.0) || !(s.brightness_b > 0.0)) {
    throw std::invalid_argument("brightness multipliers must be positive");
  }
  if (!(s.defect_magnitude > 0.0 && s.defect_magnitude <= 1.0)) {
    throw std::invalid_argument("defect_magnitude must be in (0, 1]");
  }
  if (!(s.ground_level >= 0.0 && s.ground_level <= 255.0 && s.thread_level >= 0.0 &&
        s.thread_level <= 255.0)) {
    throw std::invalid_argument("ground_level and thread_level must be in [0, 255]");
  }
}

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Trapezoid profile: full coverage in the core, linear ramp of width `ramp`
// centred on the half-depth boundary.
double coverage(double half_width, double distance, double ramp = 1.0) {
  return std::clamp((half_width + 0.5 * ramp - std::abs(distance)) / ramp, 0.0, 1.0);
}

// Flaw geometry in fabric coordinates (origin at the frame centre, u across
// the warp threads, w along them).
struct Flaw {
  DefectType type = DefectType::none;
  bool weft = false;      // which thread family is affected
  int thread = 0;         // index of the affected thread
  double along = 0.0;     // centre of the flaw along the thread
  double half_len = 0.0;  // half length of the erased or bent stretch
  double blob_u = 0.0, blob_w = 0.0, blob_radius = 0.0;
  double bend = 0.0;      // misweave angle, radians
};

Flaw make_flaw(const SynthSpec& s) {
  Flaw f;
  f.type = s.defect;
  if (s.defect == DefectType::none) return f;
  Rng rng(mix_seed(s.seed, 1));
  const double extent = std::min(s.width, s.height);
  f.weft = rng.below(2) == 1;
  const double period = f.weft ? s.weft_period : s.warp_period;
  // Only threads whose centre lies well inside the frame are eligible.
  const int reach = std::max(0, static_cast<int>(std::floor(0.4 * extent / period - 0.5)));
  f.thread = static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * reach + 2))) - reach - 1;
  f.along = rng.uniform(-0.2, 0.2) * extent;
  switch (s.defect) {
    case DefectType::missing_thread:
      f.half_len = s.defect_magnitude >= 1.0 ? HUGE_VAL : 0.5 * s.defect_magnitude * extent;
      break;
    case DefectType::broken_line:
      f.half_len = 0.5 * s.defect_magnitude * period;
      break;
    case DefectType::blob:
      f.blob_u = rng.uniform(-0.2, 0.2) * extent;
      f.blob_w = f.along;
      f.blob_radius = s.defect_magnitude * 0.5 * period;
      break;
    case DefectType::misweave:
      f.half_len = HUGE_VAL;
      f.bend = (rng.below(2) ? 1.0 : -1.0) * s.defect_magnitude * 12.0 * kDegToRad;
      break;
    case DefectType::none:
      break;
  }
  return f;
}

// Coverage of one thread family at fabric position (across, along).
double family_coverage(const SynthSpec& s, const Flaw& f, bool weft, double across, double along) {
  const double period = weft ? s.weft_period : s.warp_period;
  const double half = 0.5 * s.thread_thickness;
  const int k = static_cast<int>(std::floor(across / period));
  const double centre = (k + 0.5) * period;
  const bool hit = f.type != DefectType::none && f.type != DefectType::blob && f.weft == weft &&
                   f.thread == k;
  if (hit && std::abs(along - f.along) < f.half_len) return 0.0;
  return coverage(half, across - centre, s.edge_softness);
}

// The misweave replaces the straight stretch with one pivoted about its midpoint.
double misweave_coverage(const SynthSpec& s, const Flaw& f, double u, double w) {
  const bool weft = f.weft;
  const double across = weft ? w : u;
  const double along = weft ? u : w;
  const double period = weft ? s.weft_period : s.warp_period;
  const double centre = (f.thread + 0.5) * period;
  const double offset = along - f.along;
  if (std::abs(offset) >= f.half_len) return 0.0;
  const double bent_across = centre + offset * std::tan(f.bend);
  return coverage(0.5 * s.thread_thickness, (across - bent_across) * std::cos(f.bend),
                  s.edge_softness);
}

GrayImage render_view(const SynthSpec& s, const Flaw& f, double angle_deg, double brightness,
                      Rng& noise) {
  GrayImage img(s.width, s.height);
  const double a = angle_deg * kDegToRad;
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  const double cx = 0.5 * s.width;
  const double cy = 0.5 * s.height;
  const double ground = s.ground_level * brightness;
  const double thread = s.thread_level * brightness;
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      const double u = dx * ca + dy * sa;
      const double w = -dx * sa + dy * ca;
      double cov = std::max(family_coverage(s, f, false, u, w), family_coverage(s, f, true, w, u));
      if (f.type == DefectType::misweave) cov = std::max(cov, misweave_coverage(s, f, u, w));
      if (f.type == DefectType::blob) {
        cov = std::max(cov, coverage(f.blob_radius, std::hypot(u - f.blob_u, w - f.blob_w), s.edge_softness));
      }
      double v = ground - (ground - thread) * cov;
      if (s.noise_sigma > 0.0) v += s.noise_sigma * noise.normal();
      img(x, y) = static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
    }
  }
  return img;
}

}  // namespace

GeneratedPair generate(const SynthSpec& spec) {
  validate(spec);
  const Flaw flaw = make_flaw(spec);
  Rng noise_a(mix_seed(spec.seed, 2));
  Rng noise_b(mix_seed(spec.seed, 3));
  GeneratedPair out;
  out.frames.a = render_view(spec, flaw, spec.pattern_angle_a, spec.brightness_a, noise_a);
  out.frames.b = render_view(spec, flaw, spec.pattern_angle_b, spec.brightness_b, noise_b);
  out.label = spec.defect == DefectType::none ? 0 : 1;
  return out;
}

namespace {

int defect_count(int n, double defect_fraction) {
  return static_cast<int>(std::lround(n * defect_fraction));
}

void check_corpus_args(int n, double defect_fraction) {
  if (n < 1) throw std::invalid_argument("corpus size must be at least 1");
  if (!(defect_fraction >= 0.0 && defect_fraction <= 1.0)) {
    throw std::invalid_argument("defect_fraction must be in [0, 1]");
  }
}

}  // namespace

bool corpus_item_defective(int n, double defect_fraction, int index) {
  const long long k = defect_count(n, defect_fraction);
  return (static_cast<long long>(index) + 1) * k / n > static_cast<long long>(index) * k / n;
}

SynthSpec corpus_item_spec(const SynthSpec& base, int n, double defect_fraction, std::uint64_t seed,
                           int index) {
  check_corpus_args(n, defect_fraction);
  SynthSpec s = base;
  s.seed = mix_seed(seed, static_cast<std::uint64_t>(index));
  Rng jitter(mix_seed(s.seed, 0));
  const double scale = jitter.uniform(0.9, 1.1);
  s.warp_period = base.warp_period * scale;
  s.weft_period = base.weft_period * scale;
  const double tilt = jitter.uniform(-2.0, 2.0);
  s.pattern_angle_a = base.pattern_angle_a + tilt;
  s.pattern_angle_b = base.pattern_angle_b + tilt;
  s.noise_sigma = base.noise_sigma * jitter.uniform(0.8, 1.2);
  if (s.warp_period < 2.0 * s.thread_thickness) s.warp_period = 2.0 * s.thread_thickness;
  if (s.weft_period < 2.0 * s.thread_thickness) s.weft_period = 2.0 * s.thread_thickness;

  if (corpus_item_defective(n, defect_fraction, index)) {
    const long long k = defect_count(n, defect_fraction);
    const long long ordinal = static_cast<long long>(index) * k / n;
    s.defect = kDefectCycle[ordinal % std::size(kDefectCycle)];
  } else {
    s.defect = DefectType::none;
  }
  return s;
}

std::vector<CorpusItem> make_corpus(const SynthSpec& base, int n, double defect_fraction,
                                    std::uint64_t seed) {
  check_corpus_args(n, defect_fraction);
  validate(base);
  std::vector<CorpusItem> items;
  items.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const SynthSpec s = corpus_item_spec(base, n, defect_fraction, seed, i);
    GeneratedPair g = generate(s);
    items.push_back(CorpusItem{std::move(g.frames), g.label, s.defect});
  }
  return items;
}

}  // namespace jacq
