#include "modelset/config.hpp"

#include <fstream>
#include <sstream>

namespace modelset {

using nlohmann::json;

namespace {

QF parse_scalar(const json& j, long D) {
  if (j.is_string()) return QF::parse(j.get<std::string>(), D);
  if (j.is_number_integer()) return QF(Rational(j.get<long>()), 0, D);
  throw ValidationError("scalars must be strings like \"1/2+3√2\" or integers");
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("config is missing \"") + key + "\"");
  return j.at(key);
}

Window load_window(const json& spec, const Scheme& scheme) {
  const long D = scheme.field();
  std::string type = spec.value("type", "");
  if (type.empty()) {
    if (spec.contains("vertices")) type = "vertices";
    else if (spec.contains("halfspaces")) type = "halfspaces";
  }
  if (type == "canonical") return canonical_window(scheme);
  if (type == "vertices") {
    std::vector<QFVector> verts;
    for (const auto& v : require(spec, "vertices")) verts.push_back(parse_vector(v, D, scheme.n()));
    return Window::from_vertices(std::move(verts));
  }
  if (type == "halfspaces") {
    std::vector<Face> faces;
    for (const auto& h : require(spec, "halfspaces")) {
      Face f;
      f.a = parse_vector(require(h, "normal"), D, scheme.n());
      f.c = parse_scalar(require(h, "offset"), D);
      const json& side = require(h, "side");
      if (side.is_string()) f.side = side.get<std::string>() == "-" ? -1 : 1;
      else f.side = side.get<int>();
      faces.push_back(std::move(f));
    }
    return Window::from_halfspaces(faces, scheme.n());
  }
  throw ValidationError("window must be canonical, vertices or halfspaces");
}

}  // namespace

json scalar_json(const QF& x) { return x.str(); }

json vector_json(const QFVector& v) {
  json out = json::array();
  for (const QF& x : v) out.push_back(x.str());
  return out;
}

QFVector parse_vector(const json& j, long D, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) {
    throw ValidationError("expected a vector of " + std::to_string(dim) + " scalars, got " + j.dump());
  }
  QFVector out;
  for (const auto& x : j) out.push_back(parse_scalar(x, D));
  return out;
}

QFVector parse_vector_text(const std::string& text, long D, std::size_t dim) {
  QFVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(QF::parse(item, D));
  if (out.size() != dim) {
    throw ValidationError("expected " + std::to_string(dim) + " comma separated scalars in '" + text + "'");
  }
  return out;
}

Model load_model(const json& config) {
  try {
    const long D = require(config, "D").get<long>();
    const auto d = require(config, "d").get<std::size_t>();
    const auto n = require(config, "n").get<std::size_t>();
    std::vector<QFVector> phys, star;
    for (const auto& g : require(config, "generators")) {
      phys.push_back(parse_vector(require(g, "phys"), D, d));
      star.push_back(parse_vector(require(g, "star"), D, n));
    }
    Scheme scheme(D, d, n, std::move(phys), std::move(star));
    Window window = load_window(config.contains("window") ? config.at("window") : json{{"type", "canonical"}}, scheme);
    QFVector shift = config.contains("shift") ? parse_vector(config.at("shift"), D, n) : zeros(n);
    return Model{config.value("name", ""), std::move(scheme), std::move(window), std::move(shift)};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  }
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config file " + path + " is not valid JSON: " + e.what());
  }
  return load_model(j);
}

std::vector<std::string> preset_names() { return {"fibonacci", "octagon"}; }

json preset_config(const std::string& name) {
  if (name == "octagon") {
    // Ammann-Beenker vertex set: four generators at 45 degree steps.
    return json{
        {"name", "octagon"},
        {"D", 2},
        {"d", 2},
        {"n", 2},
        {"generators",
         json::array({
             json{{"phys", {"1", "0"}}, {"star", {"1", "0"}}},
             json{{"phys", {"1/2√2", "1/2√2"}}, {"star", {"-1/2√2", "1/2√2"}}},
             json{{"phys", {"0", "1"}}, {"star", {"0", "-1"}}},
             json{{"phys", {"-1/2√2", "1/2√2"}}, {"star", {"1/2√2", "1/2√2"}}},
         })},
        {"window", {{"type", "canonical"}}},
        {"shift", {"-1/2", "1/2-1/2√2"}},
    };
  }
  if (name == "fibonacci") {
    return json{
        {"name", "fibonacci"},
        {"D", 5},
        {"d", 1},
        {"n", 1},
        {"generators",
         json::array({
             json{{"phys", {"1"}}, {"star", {"1"}}},
             json{{"phys", {"1/2+1/2√5"}}, {"star", {"1/2-1/2√5"}}},
         })},
        {"window", {{"type", "canonical"}}},
        {"shift", {"-1/2"}},
    };
  }
  throw ValidationError("unknown preset '" + name + "' (known: fibonacci, octagon)");
}

Model load_preset(const std::string& name) { return load_model(preset_config(name)); }

}  // namespace modelset
