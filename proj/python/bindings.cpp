#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "modelset/cli.hpp"
#include "modelset/config.hpp"
#include "modelset/hull.hpp"
#include "modelset/render.hpp"

namespace py = pybind11;
using namespace modelset;

namespace {

std::vector<std::string> strings(const QFVector& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

// Owns the model; the Ellis structure and hull keep references into it.
class Session {
 public:
  explicit Session(Model model)
      : model_(std::make_unique<Model>(std::move(model))),
        E_(std::make_unique<EllisStructure>(model_->scheme, model_->window)),
        H_(std::make_unique<Hull>(*E_)) {}

  static Session preset(const std::string& name) { return Session(load_preset(name)); }
  static Session from_json(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return Session(load_model(j));
  }

  std::string name() const { return model_->name; }
  long field() const { return model_->scheme.field(); }
  std::size_t n() const { return model_->scheme.n(); }
  std::size_t d() const { return model_->scheme.d(); }

  py::list pattern(const std::string& radius, const std::optional<std::string>& w,
                   const std::optional<std::string>& center, bool closed) const {
    QFVector wv = w ? vec(*w, n()) : model_->shift;
    QFVector cv = center ? vec(*center, d()) : zeros(d());
    PointPattern p = generate_pattern(model_->scheme, model_->window, wv, Ball{cv, rational(radius)}, closed);
    return points(p);
  }

  py::list cones() const {
    py::list out;
    const FaceSemigroup& S = E_->semigroup();
    for (std::size_t i = 0; i < S.size(); ++i) {
      const PlainCone& c = E_->cones()[i];
      py::dict row;
      row["type"] = cone_str(S.cones[i]);
      row["dim"] = S.dims[i];
      row["nontrivial"] = c.nontrivial;
      row["plain_dim"] = c.plain_dim();
      out.append(row);
    }
    return out;
  }

  std::vector<std::vector<std::string>> normals() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& a : E_->arrangement().normals()) out.push_back(strings(a));
    return out;
  }

  std::string product(const std::string& t, const std::string& u) const {
    return cone_str(modelset::product(cone(t), cone(u)));
  }

  std::vector<std::string> fiber(const std::string& z) const {
    std::vector<std::string> out;
    for (const auto& p : H_->fiber(torus(z))) out.push_back(cone_str(p.c));
    return out;
  }

  std::string act(const std::string& z, const std::string& c, const std::string& g_z, const std::string& t) const {
    return cone_str(H_->act(point(z, c), element(g_z, t)).c);
  }

  py::list selector(const std::string& z, const std::string& c, const std::string& radius) const {
    return points(H_->selector(point(z, c), rational(radius)));
  }

  py::dict net_limit(const std::string& z, const std::string& c, const std::string& g_z, const std::string& t,
                     const std::string& radius, int steps) const {
    auto lim = H_->net_limit(point(z, c), element(g_z, t), rational(radius), Hull::default_schedule(steps));
    py::dict out;
    out["stabilized"] = lim.stabilized;
    out["steps"] = lim.deltas.size();
    out["certified_radius"] = lim.certified.get_d();
    out["points"] = points(lim.patch);
    return out;
  }

  std::string validate() const {
    return validate_almost_canonical(model_->scheme, model_->window).pass ? "PASS" : "INCONCLUSIVE";
  }

 private:
  QFVector vec(const std::string& text, std::size_t dim) const { return parse_vector_text(text, field(), dim); }

  static Rational rational(const std::string& text) {
    QF r = QF::parse(text);
    if (!r.is_rational() || r.sign() <= 0) throw ValidationError("radius must be a positive rational");
    return r.a();
  }

  ConeType cone(const std::string& text) const {
    ConeType t = parse_cone(text);
    if (t.size() != E_->arrangement().size()) throw ValidationError("cone type has the wrong length");
    return t;
  }

  // "w1,..;s1,.." with an optional physical part.
  TorusPoint torus(const std::string& text) const {
    if (text.empty()) return E_->canonical(zeros(n() + d()));
    auto semi = text.find(';');
    QFVector w = vec(text.substr(0, semi), n());
    QFVector s = semi == std::string::npos ? zeros(d()) : vec(text.substr(semi + 1), d());
    return E_->torus(w, s);
  }

  HullPoint point(const std::string& z, const std::string& c) const {
    HullPoint p{torus(z), parse_cone(c)};
    if (!H_->is_valid(p)) throw ValidationError("(" + E_->str(p.z) + ", " + c + ") is not a hull point");
    return p;
  }

  HullElement element(const std::string& z, const std::string& t) const { return E_->element(torus(z), cone(t)); }

  static py::list points(const PointPattern& p) {
    py::list out;
    for (const auto& pt : p.points) {
      std::vector<long> m;
      for (const auto& v : pt.m) m.push_back(v.get_si());
      out.append(py::make_tuple(m, strings(pt.pos), to_double(pt.pos)));
    }
    return out;
  }

  std::unique_ptr<Model> model_;
  std::unique_ptr<EllisStructure> E_;
  std::unique_ptr<Hull> H_;
};

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact cut and project model sets, their hulls and Ellis semigroups";

  // Translators are tried newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("presets", &preset_names);
  m.def("run_cli", &run, py::arg("args"), "Run the command line tool; returns (exit code, stdout, stderr).");

  py::class_<Session>(m, "Model")
      .def_static("preset", &Session::preset, py::arg("name"))
      .def_static("from_json", &Session::from_json, py::arg("text"))
      .def_property_readonly("name", &Session::name)
      .def_property_readonly("field", &Session::field)
      .def_property_readonly("n", &Session::n)
      .def_property_readonly("d", &Session::d)
      .def("validate", &Session::validate)
      .def("pattern", &Session::pattern, py::arg("radius") = "10", py::arg("w") = py::none(),
           py::arg("center") = py::none(), py::arg("closed") = true,
           "Points (m, exact position, float position) of the pattern in a ball.")
      .def("normals", &Session::normals)
      .def("cones", &Session::cones)
      .def("product", &Session::product, py::arg("t"), py::arg("u"))
      .def("fiber", &Session::fiber, py::arg("z") = "", "Cone types of the hull points over a torus point.")
      .def("act", &Session::act, py::arg("z"), py::arg("c"), py::arg("g_z"), py::arg("t"))
      .def("selector", &Session::selector, py::arg("z"), py::arg("c"), py::arg("radius") = "10")
      .def("net_limit", &Session::net_limit, py::arg("z"), py::arg("c"), py::arg("g_z"), py::arg("t"),
           py::arg("radius") = "10", py::arg("steps") = 24);
}
