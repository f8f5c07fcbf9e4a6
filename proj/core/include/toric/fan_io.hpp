#pragma once

// Fan file format: {"dim": d, "rays": [[...], ...], "max_cones": [[i, j, ...], ...]}, 0-based ray indices.

#include <istream>
#include <string>
#include <string_view>

#include "toric/fan.hpp"

namespace toric {

Fan fan_from_json(std::string_view text);
std::string fan_to_json(const Fan& fan);

// A fan source is a builtin name, "blowup:<source>:<cone>", "-" (read JSON from `in`) or a file path.
Fan load_fan(const std::string& source, std::istream& in);

}  // namespace toric
