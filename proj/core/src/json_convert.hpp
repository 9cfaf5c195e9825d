#pragma once

#include <json.hpp>

#include "jacq/config.hpp"

namespace jacq::detail {

nlohmann::json spec_to_value(const SynthSpec& spec);
SynthSpec spec_from_value(const nlohmann::json& doc, const SynthSpec& base);

}  // namespace jacq::detail
