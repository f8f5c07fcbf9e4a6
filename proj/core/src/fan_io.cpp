#include "toric/fan_io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "toric/error.hpp"

namespace toric {

using nlohmann::ordered_json;

Fan fan_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorKind::Malformed, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rays") || !doc.contains("max_cones"))
    throw Error(ErrorKind::Malformed, "fan JSON needs keys dim, rays, max_cones");
  try {
    int dim = doc.at("dim").get<int>();
    auto rays = doc.at("rays").get<std::vector<IntVec>>();
    auto cones = doc.at("max_cones").get<std::vector<std::vector<RayId>>>();
    return Fan::build(dim, std::move(rays), std::move(cones));
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorKind::Malformed, std::string("fan JSON has wrong value types: ") + e.what());
  }
}

std::string fan_to_json(const Fan& fan) {
  ordered_json doc;
  doc["dim"] = fan.dim();
  doc["rays"] = fan.rays();
  auto cones = ordered_json::array();
  for (const auto& c : fan.max_cones()) cones.push_back(c.ray_ids);
  doc["max_cones"] = cones;
  return doc.dump();
}

Fan load_fan(const std::string& source, std::istream& in) {
  if (is_builtin_name(source)) return builtin_fan(source);
  if (source.rfind("blowup:", 0) == 0) {
    auto rest = source.substr(7);
    auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorKind::InvalidArgument, "expected blowup:<fan>:<cone>");
    Fan base = load_fan(rest.substr(0, colon), in);
    auto cone_text = rest.substr(colon + 1);
    std::size_t cone = 0;
    try {
      std::size_t used = 0;
      cone = std::stoul(cone_text, &used);
      if (used != cone_text.size()) throw std::invalid_argument(cone_text);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, "bad cone index '" + cone_text + "'");
    }
    return blowup_at_cone(base, cone);
  }
  if (source == "-") {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fan_from_json(text);
  }
  std::ifstream file(source);
  if (!file) throw Error(ErrorKind::InvalidArgument, "cannot open fan file '" + source + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  return fan_from_json(buf.str());
}

}  // namespace toric
