#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "toricgw/toric.hpp"

namespace toricgw {

/// Reads the JSON fan document: dim, rays, max_cones (0-based), optional
/// ample ("p/q" strings), name and curve_generators.
FanInput parse_fan(std::string_view text);
FanInput load_fan(const std::string& path);

nlohmann::json fan_to_json(const FanInput& input);

/// Slurps a file; ParseError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace toricgw
