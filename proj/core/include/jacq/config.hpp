#pragma once

#include <string>
#include <string_view>

#include "jacq/pipeline.hpp"
#include "jacq/synthgen.hpp"

namespace jacq {

/// Pipeline configuration file: a flat JSON object whose keys are
/// gaussian_sigma, gaussian_radius, binarize_method ("otsu" | "fixed"),
/// fixed_threshold, skip_noise_filter, theta_bins, decision_threshold and
/// model_path. Missing keys keep the value from `base`; unknown keys are an
/// error.
PipelineConfig pipeline_config_from_json(std::string_view text, const PipelineConfig& base = {});
std::string to_json(const PipelineConfig& cfg);

/// SynthSpec as JSON; keys are the SynthSpec field names, defect by name.
SynthSpec synth_spec_from_json(std::string_view text, const SynthSpec& base = {});
std::string to_json(const SynthSpec& spec);

std::string_view to_string(BinarizeMethod method) noexcept;
BinarizeMethod parse_binarize_method(std::string_view name);

std::string read_text_file(const std::string& path);

}  // namespace jacq
