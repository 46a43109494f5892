#pragma once

#include <string>

#include <json.hpp>

#include "reslab/geometry.hpp"

namespace reslab {

/// Reads `{"alpha": <real>, "points": [[x,y,z], ...]}`.
/// File problems raise IoError; malformed JSON or schema violations raise
/// ValidationError.
PointConfig read_config(const std::string& path);

/// Parses the same schema from an in-memory document.
PointConfig parse_config(const nlohmann::json& doc);

nlohmann::json config_to_json(const PointConfig& config);
void write_config(const std::string& path, const PointConfig& config);

}  // namespace reslab
