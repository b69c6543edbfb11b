#pragma once

// JSON scheme configurations and the bundled presets.

#include <json.hpp>

#include <string>
#include <vector>

#include "modelset/cps.hpp"

namespace modelset {

/// A scheme with its window and the shift of its reference pattern.
struct Model {
  std::string name;
  Scheme scheme;
  Window window;
  QFVector shift;
};

/// Config layout:
///   {"D": 2, "d": 2, "n": 2,
///    "generators": [{"phys": ["1","0"], "star": ["1","0"]}, ...],
///    "window": {"type": "canonical"} | {"vertices": [[...], ...]}
///              | {"halfspaces": [{"normal": [...], "offset": "...", "side": 1}, ...]},
///    "shift": ["-1/2", ...]}
Model load_model(const nlohmann::json& config);
Model load_model_file(const std::string& path);

nlohmann::json scalar_json(const QF& x);
nlohmann::json vector_json(const QFVector& v);
QFVector parse_vector(const nlohmann::json& j, long D, std::size_t dim);
/// Comma separated scalars, e.g. "1/2,-√2".
QFVector parse_vector_text(const std::string& text, long D, std::size_t dim);

std::vector<std::string> preset_names();
/// Throws ValidationError for unknown names.
nlohmann::json preset_config(const std::string& name);
Model load_preset(const std::string& name);

}  // namespace modelset
