#include "jacq/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json_convert.hpp"

namespace jacq {

using nlohmann::json;

std::string_view to_string(BinarizeMethod method) noexcept {
  return method == BinarizeMethod::otsu ? "otsu" : "fixed";
}

BinarizeMethod parse_binarize_method(std::string_view name) {
  if (name == "otsu") return BinarizeMethod::otsu;
  if (name == "fixed") return BinarizeMethod::fixed;
  throw std::invalid_argument("unknown binarize_method '" + std::string(name) + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

namespace {

json parse_object(std::string_view text, const char* what) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  return doc;
}

template <typename T>
void take(const json& doc, const char* key, T& field, const char* what) {
  if (!doc.contains(key)) return;
  try {
    field = doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string(what) + ": key '" + key + "' has the wrong type");
  }
}

void reject_unknown(const json& doc, std::initializer_list<std::string_view> known, const char* what) {
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument(std::string(what) + ": unknown key '" + key + "'");
    }
  }
}

}  // namespace

PipelineConfig pipeline_config_from_json(std::string_view text, const PipelineConfig& base) {
  constexpr const char* what = "pipeline config";
  const json doc = parse_object(text, what);
  reject_unknown(doc,
                 {"gaussian_sigma", "gaussian_radius", "binarize_method", "fixed_threshold",
                  "skip_noise_filter", "theta_bins", "decision_threshold", "model_path"},
                 what);
  PipelineConfig cfg = base;
  take(doc, "gaussian_sigma", cfg.preproc.gaussian_sigma, what);
  take(doc, "gaussian_radius", cfg.preproc.gaussian_radius, what);
  if (doc.contains("binarize_method")) {
    std::string name;
    take(doc, "binarize_method", name, what);
    cfg.preproc.binarize_method = parse_binarize_method(name);
  }
  take(doc, "fixed_threshold", cfg.preproc.fixed_threshold, what);
  take(doc, "skip_noise_filter", cfg.preproc.skip_noise_filter, what);
  take(doc, "theta_bins", cfg.theta_bins, what);
  take(doc, "decision_threshold", cfg.decision_threshold, what);
  take(doc, "model_path", cfg.model_path, what);
  cfg.validate();
  return cfg;
}

std::string to_json(const PipelineConfig& cfg) {
  const json doc = {
      {"gaussian_sigma", cfg.preproc.gaussian_sigma},
      {"gaussian_radius", cfg.preproc.gaussian_radius},
      {"binarize_method", std::string(to_string(cfg.preproc.binarize_method))},
      {"fixed_threshold", cfg.preproc.fixed_threshold},
      {"skip_noise_filter", cfg.preproc.skip_noise_filter},
      {"theta_bins", cfg.theta_bins},
      {"decision_threshold", cfg.decision_threshold},
      {"model_path", cfg.model_path},
  };
  return doc.dump(2);
}

namespace detail {

json spec_to_value(const SynthSpec& s) {
  return json{
      {"width", s.width},
      {"height", s.height},
      {"warp_period", s.warp_period},
      {"weft_period", s.weft_period},
      {"thread_thickness", s.thread_thickness},
      {"edge_softness", s.edge_softness},
      {"pattern_angle_a", s.pattern_angle_a},
      {"pattern_angle_b", s.pattern_angle_b},
      {"brightness_a", s.brightness_a},
      {"brightness_b", s.brightness_b},
      {"ground_level", s.ground_level},
      {"thread_level", s.thread_level},
      {"noise_sigma", s.noise_sigma},
      {"defect", std::string(to_string(s.defect))},
      {"defect_magnitude", s.defect_magnitude},
      {"seed", s.seed},
  };
}

SynthSpec spec_from_value(const json& doc, const SynthSpec& base) {
  constexpr const char* what = "synth spec";
  if (!doc.is_object()) throw std::invalid_argument("synth spec: expected a JSON object");
  reject_unknown(doc,
                 {"width", "height", "warp_period", "weft_period", "thread_thickness",
                  "edge_softness", "pattern_angle_a", "pattern_angle_b", "brightness_a", "brightness_b",
                  "ground_level", "thread_level", "noise_sigma", "defect", "defect_magnitude",
                  "seed"},
                 what);
  SynthSpec s = base;
  take(doc, "width", s.width, what);
  take(doc, "height", s.height, what);
  take(doc, "warp_period", s.warp_period, what);
  take(doc, "weft_period", s.weft_period, what);
  take(doc, "thread_thickness", s.thread_thickness, what);
  take(doc, "edge_softness", s.edge_softness, what);
  take(doc, "pattern_angle_a", s.pattern_angle_a, what);
  take(doc, "pattern_angle_b", s.pattern_angle_b, what);
  take(doc, "brightness_a", s.brightness_a, what);
  take(doc, "brightness_b", s.brightness_b, what);
  take(doc, "ground_level", s.ground_level, what);
  take(doc, "thread_level", s.thread_level, what);
  take(doc, "noise_sigma", s.noise_sigma, what);
  if (doc.contains("defect")) {
    std::string name;
    take(doc, "defect", name, what);
    s.defect = parse_defect_type(name);
  }
  take(doc, "defect_magnitude", s.defect_magnitude, what);
  take(doc, "seed", s.seed, what);
  validate(s);
  return s;
}

}  // namespace detail

SynthSpec synth_spec_from_json(std::string_view text, const SynthSpec& base) {
  return detail::spec_from_value(parse_object(text, "synth spec"), base);
}

std::string to_json(const SynthSpec& spec) { return detail::spec_to_value(spec).dump(2); }

}  // namespace jacq
