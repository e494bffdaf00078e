#pragma once

#include <json.hpp>

namespace star {

// Self-describing payload model: null, bool, number, string, list, record.
using Value = nlohmann::ordered_json;

}  // namespace star
