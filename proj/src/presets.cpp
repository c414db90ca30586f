#include <algorithm>
#include <cstdlib>

#include "dce/error.hpp"
#include "dce/scenario.hpp"

namespace dce::scenario {

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("DCE_PRESET_DIR"); env && *env) return env;
#ifdef DCE_PRESET_DIR
  return DCE_PRESET_DIR;
#else
  return "presets";
#endif
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(preset_dir(), ec))
    if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

Scenario load_preset(const std::string& name) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw ValidationError("unknown preset '" + name + "' (available: " + list + ")");
  }
  return load_scenario(preset_dir() / (name + ".json"));
}

}  // namespace dce::scenario
