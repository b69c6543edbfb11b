#include "modelset/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "modelset/config.hpp"
#include "modelset/ellis.hpp"
#include "modelset/hull.hpp"
#include "modelset/render.hpp"

namespace modelset {

namespace {

struct Source {
  std::string config;
  std::string preset;
};

struct Options {
  Source src;
  std::string output;
  std::string z = "";
  std::string g_z = "";
  std::string w = "";
  std::string center = "";
  std::string cone_type;
  std::string radius = "10";
  std::string format = "csv";
  std::string preset_name;
  int point = 0;
  int steps = 24;
  bool open = false;
  bool patterns = false;
};

Model load(const Source& src) {
  if (!src.config.empty() && !src.preset.empty()) throw ValidationError("give either --config or --preset, not both");
  if (!src.config.empty()) return load_model_file(src.config);
  if (!src.preset.empty()) return load_preset(src.preset);
  throw ValidationError("a scheme is required: --config FILE or --preset NAME");
}

Rational parse_radius(const std::string& text) {
  QF r = QF::parse(text);
  if (!r.is_rational() || r.sign() <= 0) throw ValidationError("radius must be a positive rational, got '" + text + "'");
  return r.a();
}

std::string vec(const QFVector& v) { return "(" + str(v) + ")"; }

std::string span(const std::vector<QFVector>& basis) {
  if (basis.empty()) return "{0}";
  std::string out = "span{";
  for (std::size_t i = 0; i < basis.size(); ++i) out += (i ? "," : "") + vec(basis[i]);
  return out + "}";
}

std::string approx(const Rational& x) {
  std::ostringstream os;
  os << std::setprecision(4) << x.get_d();
  return os.str();
}

std::string zbasis(const std::vector<QFVector>& basis) {
  std::string out = "Z<";
  for (std::size_t i = 0; i < basis.size(); ++i) out += (i ? "," : "") + vec(basis[i]);
  return out + ">";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

/// "w1,...,wn;s1,...,sd"; the physical part may be omitted.
TorusPoint parse_torus(const EllisStructure& E, const std::string& text) {
  const long D = E.scheme().field();
  if (text.empty()) return E.canonical(zeros(E.n() + E.d()));
  auto semi = text.find(';');
  QFVector w = parse_vector_text(text.substr(0, semi), D, E.n());
  QFVector s = semi == std::string::npos ? zeros(E.d()) : parse_vector_text(text.substr(semi + 1), D, E.d());
  return E.torus(w, s);
}

std::string element_str(const EllisStructure& E, const HullElement& g) {
  return "z=" + E.str(g.z) + "  t=" + cone_str(g.t);
}

std::string point_str(const EllisStructure& E, const HullPoint& p) {
  return "z=" + E.str(p.z) + "  c=" + cone_str(p.c);
}

std::string subgroup_line(const ClosureDecomposition& c, std::size_t ambient_dim) {
  return "V: " + span(c.V) + "; D: " + span(c.D) + "; dense: " + yes_no(c.is_dense_in(ambient_dim));
}

void cmd_validate(const Options& o, std::ostream& out) {
  Model model = load(o.src);
  const Scheme& s = model.scheme;
  out << "scheme: D=" << s.field() << " d=" << s.d() << " n=" << s.n() << " r=" << s.r() << '\n';
  for (std::size_t i = 0; i < s.r(); ++i) {
    out << "  e" << i + 1 << " = " << vec(s.phys()[i]) << "  e" << i + 1 << "* = " << vec(s.star()[i]) << '\n';
  }
  out << "window: " << model.window.vertices().size() << " vertices\n";
  for (const auto& v : model.window.vertices()) out << "  " << vec(v) << '\n';
  out << "faces: " << model.window.faces().size() << '\n';
  for (const auto& f : model.window.faces()) {
    out << "  normal=" << vec(f.a) << " offset=" << f.c.str() << " side=" << (f.side > 0 ? '+' : '-') << '\n';
  }
  ValidationReport report = validate_almost_canonical(s, model.window);
  out << "hyperplanes: " << report.hyperplanes.size() << '\n';
  for (std::size_t i = 0; i < report.hyperplanes.size(); ++i) {
    const auto& h = report.hyperplanes[i];
    std::vector<QFVector> L = hyperplane_basis(h.normal);
    ClosureDecomposition c = closure_decompose(FGSubgroup(L, h.stabilizer_star_basis, s.n()));
    out << "  H" << i + 1 << " normal=" << vec(h.normal) << " stabilizer rank=" << h.stabilizer_rank
        << " star image " << zbasis(h.stabilizer_star_basis) << '\n';
    out << "    " << subgroup_line(c, L.size()) << '\n';
  }
  out << "almost canonical (stabilizer star images dense in their hyperplanes): "
      << (report.pass ? "PASS" : "INCONCLUSIVE") << '\n';
}

void cmd_pattern(const Options& o, std::ostream& out) {
  Model model = load(o.src);
  const Scheme& s = model.scheme;
  QFVector w = o.w.empty() ? model.shift : parse_vector_text(o.w, s.field(), s.n());
  QFVector c = o.center.empty() ? zeros(s.d()) : parse_vector_text(o.center, s.field(), s.d());
  Rational R = parse_radius(o.radius);
  PointPattern p = generate_pattern(s, model.window, w, Ball{c, R}, !o.open);
  if (o.format == "csv") write_csv(out, p, s.r(), s.d());
  else if (o.format == "svg") write_svg(out, p, s.d(), R);
  else throw ValidationError("unknown format '" + o.format + "' (csv or svg)");
}

void cmd_cones(const Options& o, std::ostream& out) {
  Model model = load(o.src);
  EllisStructure E(model.scheme, model.window);
  const auto& normals = E.arrangement().normals();
  out << "hyperplanes: " << normals.size() << '\n';
  for (std::size_t i = 0; i < normals.size(); ++i) {
    std::vector<QFVector> dir = hyperplane_basis(normals[i]);
    out << "  H" << i + 1 << " normal=" << vec(normals[i]) << " direction=" << span(dir) << '\n';
  }
  const FaceSemigroup& S = E.semigroup();
  out << "cones: " << S.size() << '\n';
  out << "  type dim nontrivial plain_dim\n";
  for (std::size_t i = 0; i < S.size(); ++i) {
    const PlainCone& c = E.cones()[i];
    out << "  " << cone_str(S.cones[i]) << ' ' << S.dims[i] << ' ' << yes_no(c.nontrivial) << ' '
        << (c.nontrivial ? std::to_string(c.plain_dim()) : "-") << '\n';
  }
}

void cmd_semigroup(const Options& o, std::ostream& out) {
  Model model = load(o.src);
  EllisStructure E(model.scheme, model.window);
  const FaceSemigroup& S = E.semigroup();
  out << "product table (row . column): " << S.size() << "x" << S.size() << '\n';
  for (std::size_t i = 0; i < S.size(); ++i) {
    out << "  " << cone_str(S.cones[i]) << " |";
    for (std::size_t j = 0; j < S.size(); ++j) out << ' ' << cone_str(S.cones[S.table[i][j]]);
    out << '\n';
  }
  out << "order (t <= u):\n";
  for (std::size_t i = 0; i < S.size(); ++i) {
    out << "  " << cone_str(S.cones[i]) << " <=";
    for (std::size_t j = 0; j < S.size(); ++j) {
      if (leq(S.cones[i], S.cones[j])) out << ' ' << cone_str(S.cones[j]);
    }
    out << '\n';
  }
  std::vector<std::size_t> nt = E.nontrivial_indices();
  std::vector<std::size_t> ideal = minimal_ideal(S, nt);
  out << "nontrivial: " << nt.size() << '\n';
  out << "minimal ideal: " << ideal.size() << " types:";
  for (std::size_t i : ideal) out << ' ' << cone_str(S.cones[i]);
  out << '\n';
  out << "right ideal: " << yes_no(is_right_ideal(S, ideal, nt)) << '\n';
}

void cmd_ellis(const Options& o, std::ostream& out) {
  Model model = load(o.src);
  EllisStructure E(model.scheme, model.window);
  const std::size_t n = E.n();
  std::size_t full = 0, cylinders = 0, identity = 0;
  out << "components of the Ellis semigroup, grouped by <C_t>:\n";
  for (const auto& comp : E.components()) {
    out << "  <C_t> dim " << comp.dim() << " = " << span(comp.V) << ", " << comp.types.size() << (comp.types.size() == 1 ? " cone type:" : " cone types:");
    for (const auto& t : comp.types) out << ' ' << cone_str(t);
    out << '\n';
    if (comp.dim() == n) full += comp.types.size();
    else if (comp.dim() == 0) identity += comp.types.size();
    else ++cylinders;
  }
  out << "full-torus components: " << full << '\n';
  out << "cylinder components: " << cylinders << '\n';
  out << "identity components: " << identity << '\n';
  out << "idempotents over 0: " << E.idempotents().size() << '\n';
  out << "minimal ideal cone types:";
  for (const auto& t : E.minimal_ideal_types()) out << ' ' << cone_str(t);
  out << '\n';
  for (std::size_t i : E.nontrivial_indices()) {
    const PlainCone& c = E.cones()[i];
    out << "  " << cone_str(c.t) << ": " << subgroup_line(c.closure, c.span.size()) << '\n';
  }
}

void cmd_fiber(const Options& o, std::ostream& out) {
  Model model = load(o.src);
  EllisStructure E(model.scheme, model.window);
  Hull H(E);
  TorusPoint z = parse_torus(E, o.z);
  CutType cut = H.cut_type(E.internal(z));
  out << "z=" << E.str(z) << '\n';
  out << "cut type:";
  for (std::size_t h = 0; h < cut.size(); ++h) {
    if (cut[h]) out << " H" << h + 1;
  }
  out << '\n';
  std::vector<HullPoint> pts = H.fiber(z);
  out << "fiber: " << pts.size() << " points\n";
  Rational R = parse_radius(o.radius);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << point_str(E, pts[i]) << '\n';
    if (o.patterns) {
      PointPattern p = H.selector(pts[i], R);
      out << "# pattern " << i + 1 << ", radius " << R.get_str() << ", " << p.size() << " points\n";
      write_csv(out, p, E.scheme().r(), E.d());
    }
  }
}

void cmd_act(const Options& o, std::ostream& out) {
  Model model = load(o.src);
  EllisStructure E(model.scheme, model.window);
  Hull H(E);
  if (o.cone_type.empty()) throw ValidationError("--cone-type is required");
  ConeType t = parse_cone(o.cone_type);
  if (t.size() != E.arrangement().size()) {
    throw ValidationError("cone type needs " + std::to_string(E.arrangement().size()) + " signs");
  }
  E.semigroup().index_of(t);
  HullElement g = E.element(parse_torus(E, o.g_z), t);
  std::vector<HullPoint> pts = H.fiber(parse_torus(E, o.z));
  if (o.point < 0 || o.point > static_cast<int>(pts.size())) throw ValidationError("--point out of range");
  Rational R = parse_radius(o.radius);
  if (o.steps < 2) throw ValidationError("--steps must be at least 2");
  auto schedule = Hull::default_schedule(o.steps);
  out << "g: " << element_str(E, g) << '\n';
  bool all_agree = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (o.point > 0 && static_cast<int>(i) + 1 != o.point) continue;
    const HullPoint& p = pts[i];
    HullPoint q = H.act(p, g);
    PointPattern expect = H.selector(q, R);
    Hull::NetLimit lim = H.net_limit(p, g, R, schedule);
    out << "p" << i + 1 << ": " << point_str(E, p) << '\n';
    out << "  p.g: " << point_str(E, q) << '\n';
    out << "  selector(p.g): " << expect.size() << " points on B(0," << R.get_str() << ")\n";
    if (!lim.stabilized) {
      out << "  net limit: no stabilization within " << schedule.size() << " steps (certified radius "
          << "≈" << approx(lim.certified) << ")\n";
      all_agree = false;
      continue;
    }
    bool same = same_positions(expect, lim.patch);
    out << "  net limit: " << lim.patch.size() << " points, stabilized at delta=" << lim.deltas.back().get_str()
        << " after " << lim.deltas.size() << " steps (certified radius ≈" << approx(lim.certified) << ")\n";
    if (same) {
      out << "  agree\n";
    } else {
      all_agree = false;
      auto a = expect.positions();
      auto b = lim.patch.positions();
      std::size_t only_a = 0, only_b = 0;
      for (const auto& x : a) only_a += std::find(b.begin(), b.end(), x) == b.end();
      for (const auto& x : b) only_b += std::find(a.begin(), a.end(), x) == a.end();
      out << "  DIFFER: " << only_a << " points only in selector(p.g), " << only_b << " only in the limit\n";
    }
  }
  if (!all_agree) throw InvariantViolation("action and net limit disagree");
}

void cmd_preset_export(const Options& o, std::ostream& out) { out << preset_config(o.preset_name).dump(2) << '\n'; }

void cmd_preset_list(const Options&, std::ostream& out) {
  for (const auto& n : preset_names()) out << n << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Cut and project model sets and the Ellis semigroup of their hull", "modelset"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "modelset 0.1.0");

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--config", o.src.config, "Scheme config (JSON)");
    sub->add_option("--preset", o.src.preset, "Bundled scheme: octagon or fibonacci");
  };
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "Output file (default stdout)"); };

  std::vector<std::pair<CLI::App*, void (*)(const Options&, std::ostream&)>> commands;

  auto* validate = app.add_subcommand("validate", "Scheme, window and almost canonical report");
  add_source(validate);
  add_output(validate);
  commands.emplace_back(validate, cmd_validate);

  auto* pattern = app.add_subcommand("pattern", "Model set points in a ball");
  add_source(pattern);
  add_output(pattern);
  pattern->add_option("--w", o.w, "Internal translate w (default: the config shift)");
  pattern->add_option("--center", o.center, "Ball center (default 0)");
  pattern->add_option("--radius", o.radius, "Ball radius (rational)");
  pattern->add_option("--format", o.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  pattern->add_flag("--open", o.open, "Use the window interior");
  commands.emplace_back(pattern, cmd_pattern);

  auto* cones = app.add_subcommand("cones", "Hyperplanes and cone stratification");
  add_source(cones);
  add_output(cones);
  commands.emplace_back(cones, cmd_cones);

  auto* semigroup = app.add_subcommand("semigroup", "Face semigroup product table, order and minimal ideal");
  add_source(semigroup);
  add_output(semigroup);
  commands.emplace_back(semigroup, cmd_semigroup);

  auto* ellis = app.add_subcommand("ellis", "Components of the Ellis semigroup");
  add_source(ellis);
  add_output(ellis);
  commands.emplace_back(ellis, cmd_ellis);

  auto* fiber = app.add_subcommand("fiber", "Hull points over a torus point");
  add_source(fiber);
  add_output(fiber);
  fiber->add_option("--z", o.z, "Torus point \"w1,..,wn;s1,..,sd\" (default 0)");
  fiber->add_flag("--patterns", o.patterns, "Print the pattern of each point as CSV");
  fiber->add_option("--radius", o.radius, "Pattern radius");
  commands.emplace_back(fiber, cmd_fiber);

  auto* act = app.add_subcommand("act", "Ellis action on a fiber, checked against the net limit");
  add_source(act);
  add_output(act);
  act->add_option("--z", o.z, "Torus point of the fiber (default 0)");
  act->add_option("--point", o.point, "1-based fiber point (default: all)");
  act->add_option("--g-z", o.g_z, "Torus point of the Ellis element (default 0)");
  act->add_option("--cone-type", o.cone_type, "Cone type of the Ellis element, e.g. +0-+")->required();
  act->add_option("--radius", o.radius, "Patch radius");
  act->add_option("--steps", o.steps, "Length of the delta schedule 1/4, 1/8, ...");
  commands.emplace_back(act, cmd_act);

  auto* preset = app.add_subcommand("preset", "Bundled schemes");
  preset->require_subcommand(1);
  auto* exp = preset->add_subcommand("export", "Write the JSON config of a preset");
  exp->add_option("name", o.preset_name, "Preset name")->required();
  add_output(exp);
  commands.emplace_back(exp, cmd_preset_export);
  auto* list = preset->add_subcommand("list", "List preset names");
  commands.emplace_back(list, cmd_preset_list);

  std::vector<const char*> argv{"modelset"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      if (o.output.empty()) {
        fn(o, out);
      } else {
        std::ostringstream buf;
        fn(o, buf);
        std::ofstream f(o.output, std::ios::binary);
        if (!f) throw ValidationError("cannot write " + o.output);
        f << buf.str();
      }
      return 0;
    }
    err << "error: usage: no command given\n";
    return 2;
  } catch (const InvariantViolation& e) {
    err << "error: invariant: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: validation: " << e.what() << '\n';
    return 2;
  } catch (const FieldMismatch& e) {
    err << "error: validation: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: internal: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace modelset
