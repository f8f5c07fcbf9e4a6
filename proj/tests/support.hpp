#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toric/error.hpp"
#include "toric/fan.hpp"

namespace testing {

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"p1",           "p2",           "p3",           "p1xp1",
                                              "hirzebruch:0", "hirzebruch:1", "hirzebruch:2", "hirzebruch:3",
                                              "blowup:p2:0"};
  return names;
}

inline toric::Fan named(const std::string& name) {
  if (name.rfind("blowup:p2:", 0) == 0)
    return toric::blowup_at_cone(toric::projective_space(2), std::stoul(name.substr(10)));
  return toric::builtin_fan(name);
}

inline std::optional<toric::ErrorKind> error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const toric::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testing
