#include "solenoid/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

#include "solenoid/errors.hpp"

namespace solenoid {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ValidationError("config: '" + where + "' must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) throw ValidationError("config: unknown key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("config: key '" + where + "." + key + "' has the wrong type");
  }
}

Complex parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ValidationError("config: '" + where + "' must be a number or a [re, im] pair");
}

Vec2 parse_vec2(const json& v, const std::string& where) {
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ValidationError("config: '" + where + "' must be an [x, y] pair");
}

LatticeKind parse_kind(const std::string& s) {
  if (s == "ring") return LatticeKind::ring;
  if (s == "square") return LatticeKind::square;
  if (s == "dimer") return LatticeKind::dimer;
  throw ValidationError("config: geometry.kind must be ring, square or dimer (got '" + s + "')");
}

FieldType parse_field(const std::string& s) {
  if (s == "zero") return FieldType::zero;
  if (s == "u1") return FieldType::u1;
  if (s == "su2") return FieldType::su2;
  throw ValidationError("config: field must be zero, u1 or su2 (got '" + s + "')");
}

}  // namespace

RunConfig parse_config(const json& doc) {
  check_keys(doc, {"geometry", "lattice_constant", "beam", "field", "hopping", "hop_scale", "packet", "evolve",
                   "outputs", "oracle", "sweep"},
             "");
  RunConfig cfg;

  const json geo = doc.value("geometry", json::object());
  check_keys(geo, {"kind", "sites", "side"}, "geometry");
  cfg.geometry.kind = parse_kind(get<std::string>(geo, "kind", "geometry", "ring"));
  cfg.geometry.sites = get<int>(geo, "sites", "geometry", 100);
  cfg.geometry.side = get<int>(geo, "side", "geometry", 40);
  if (cfg.geometry.kind == LatticeKind::ring && (cfg.geometry.sites < 4 || cfg.geometry.sites % 2 != 0)) {
    throw ValidationError("config: geometry.sites must be even and >= 4 (got " + std::to_string(cfg.geometry.sites) + ")");
  }
  if (cfg.geometry.kind == LatticeKind::square && cfg.geometry.side < 2) {
    throw ValidationError("config: geometry.side must be >= 2 (got " + std::to_string(cfg.geometry.side) + ")");
  }
  cfg.lattice_constant = get<double>(doc, "lattice_constant", "", 1.0);
  if (!(cfg.lattice_constant > 0.0)) throw ValidationError("config: lattice_constant must be positive");
  const double a = cfg.lattice_constant;

  const json beam = doc.value("beam", json::object());
  check_keys(beam, {"modes", "waist", "center_offset", "lg_exponent_convention"}, "beam");
  if (beam.contains("modes")) {
    if (!beam["modes"].is_array() || beam["modes"].empty()) {
      throw ValidationError("config: beam.modes must be a non-empty list");
    }
    cfg.beam.modes.clear();
    for (std::size_t k = 0; k < beam["modes"].size(); ++k) {
      const json& m = beam["modes"][k];
      const std::string where = "beam.modes[" + std::to_string(k) + "]";
      check_keys(m, {"p", "l", "coefficient"}, where);
      BeamModeConfig mode;
      mode.p = get<int>(m, "p", where, 0);
      mode.l = get<int>(m, "l", where, 1);
      if (m.contains("coefficient")) mode.coefficient = parse_complex(m["coefficient"], where + ".coefficient");
      if (mode.p < 0) throw ValidationError("config: " + where + ".p must be >= 0");
      cfg.beam.modes.push_back(mode);
    }
  }
  switch (cfg.geometry.kind) {
    case LatticeKind::square: cfg.beam.waist = cfg.geometry.side * a / 2.0; break;
    case LatticeKind::ring: cfg.beam.waist = cfg.geometry.sites * a / kTwoPi; break;
    case LatticeKind::dimer: cfg.beam.waist = a; break;
  }
  cfg.beam.waist = get<double>(beam, "waist", "beam", cfg.beam.waist);
  if (!(cfg.beam.waist > 0.0)) throw ValidationError("config: beam.waist must be positive");
  if (beam.contains("center_offset")) cfg.beam.center_offset = parse_vec2(beam["center_offset"], "beam.center_offset");
  const std::string conv = get<std::string>(beam, "lg_exponent_convention", "beam", "paper");
  if (conv == "paper") {
    cfg.beam.convention = ExponentConvention::paper;
  } else if (conv == "standard") {
    cfg.beam.convention = ExponentConvention::standard;
  } else {
    throw ValidationError("config: beam.lg_exponent_convention must be paper or standard");
  }
  if (cfg.geometry.kind != LatticeKind::square && (cfg.beam.center_offset.x != 0.0 || cfg.beam.center_offset.y != 0.0)) {
    throw ValidationError("config: beam.center_offset applies to square lattices only");
  }

  cfg.field = parse_field(get<std::string>(doc, "field", "", "u1"));

  const json hop = doc.value("hopping", json::object());
  check_keys(hop, {"mode", "sigma", "points_per_axis", "window"}, "hopping");
  const std::string mode = get<std::string>(hop, "mode", "hopping", "phase_only");
  if (mode == "phase_only") {
    cfg.hopping.mode = HoppingMode::phase_only;
  } else if (mode == "integral") {
    cfg.hopping.mode = HoppingMode::integral;
  } else {
    throw ValidationError("config: hopping.mode must be phase_only or integral (got '" + mode + "')");
  }
  cfg.hopping.sigma = get<double>(hop, "sigma", "hopping", 0.25 * a);
  cfg.hopping.quadrature.points_per_axis = get<int>(hop, "points_per_axis", "hopping", 24);
  cfg.hopping.quadrature.window = get<double>(hop, "window", "hopping", 4.0);
  validate(cfg.hopping.quadrature);
  if (!(cfg.hopping.sigma > 0.0) || !(cfg.hopping.sigma < 0.5 * a)) {
    throw ValidationError("config: hopping.sigma must lie in (0, a/2)");
  }
  if (cfg.hopping.mode == HoppingMode::phase_only) {
    for (const auto& m : cfg.beam.modes) {
      if (m.l != cfg.beam.modes.front().l) {
        throw ValidationError("config: phase_only hopping needs every beam mode to share one winding l");
      }
    }
  }

  cfg.hop_scale = get<double>(doc, "hop_scale", "", 0.05);
  if (!(cfg.hop_scale > 0.0)) throw ValidationError("config: hop_scale must be positive");

  const json pk = doc.value("packet", json::object());
  check_keys(pk, {"site", "width", "spin_weights", "transport"}, "packet");
  int default_site = 1;
  int default_width = 3;
  if (cfg.geometry.kind == LatticeKind::square) {
    default_site = (cfg.geometry.side / 4) * cfg.geometry.side + cfg.geometry.side / 2;
    default_width = 9;
  } else if (cfg.geometry.kind == LatticeKind::dimer) {
    default_width = 0;
  }
  cfg.packet.site = get<int>(pk, "site", "packet", default_site);
  cfg.packet.width = get<int>(pk, "width", "packet", default_width);
  if (pk.contains("spin_weights")) {
    const Vec2 w = parse_vec2(pk["spin_weights"], "packet.spin_weights");
    cfg.packet.spin_weights = {w.x, w.y};
  }
  cfg.packet.transport = get<bool>(pk, "transport", "packet", true);
  if (cfg.packet.width < 0) throw ValidationError("config: packet.width must be >= 0");
  int num_sites = 2;
  if (cfg.geometry.kind == LatticeKind::ring) num_sites = cfg.geometry.sites;
  if (cfg.geometry.kind == LatticeKind::square) num_sites = cfg.geometry.side * cfg.geometry.side;
  if (cfg.packet.site < 0 || cfg.packet.site >= num_sites) {
    throw ValidationError("config: packet.site " + std::to_string(cfg.packet.site) + " is outside the lattice (" +
                          std::to_string(num_sites) + " sites)");
  }
  if (cfg.packet.spin_weights[0] < 0.0 || cfg.packet.spin_weights[1] < 0.0 ||
      cfg.packet.spin_weights[0] + cfg.packet.spin_weights[1] == 0.0) {
    throw ValidationError("config: packet.spin_weights must be non-negative and not both zero");
  }

  const json ev = doc.value("evolve", json::object());
  check_keys(ev, {"dt", "t_end", "record_stride", "lambda"}, "evolve");
  double default_t_end = 600.0;
  int default_stride = 20;
  if (cfg.geometry.kind == LatticeKind::square) {
    default_t_end = 4000.0;
    default_stride = 200;
  } else if (cfg.geometry.kind == LatticeKind::dimer) {
    default_t_end = 50.0;
  }
  cfg.evolve.dt = get<double>(ev, "dt", "evolve", 0.05);
  cfg.evolve.t_end = get<double>(ev, "t_end", "evolve", default_t_end);
  cfg.evolve.record_stride = get<int>(ev, "record_stride", "evolve", default_stride);
  cfg.evolve.lambda = get<double>(ev, "lambda", "evolve", 0.0);
  validate(cfg.evolve);

  const json out = doc.value("outputs", json::object());
  check_keys(out, {"directory", "formats", "images", "eps_destructive", "theta_constructive"}, "outputs");
  cfg.outputs.directory = get<std::string>(out, "directory", "outputs", "out");
  if (out.contains("formats")) {
    const auto formats = get<std::vector<std::string>>(out, "formats", "outputs", {});
    cfg.outputs.csv = false;
    for (const auto& f : formats) {
      if (f == "csv") {
        cfg.outputs.csv = true;
      } else if (f != "json") {
        throw ValidationError("config: outputs.formats entries must be csv or json (got '" + f + "')");
      }
    }
  }
  cfg.outputs.images = get<bool>(out, "images", "outputs", false);
  if (out.contains("eps_destructive")) cfg.outputs.eps_destructive = get<double>(out, "eps_destructive", "outputs", 0.0);
  if (out.contains("theta_constructive")) {
    cfg.outputs.theta_constructive = get<double>(out, "theta_constructive", "outputs", 0.0);
  }

  const json orc = doc.value("oracle", json::object());
  check_keys(orc, {"times", "tolerance"}, "oracle");
  cfg.oracle.times = get<std::vector<double>>(orc, "times", "oracle", {10.0, 100.0});
  cfg.oracle.tolerance = get<double>(orc, "tolerance", "oracle", 1e-8);
  for (double t : cfg.oracle.times) {
    if (!(t >= 0.0)) throw ValidationError("config: oracle.times must be >= 0");
  }

  const json sw = doc.value("sweep", json::object());
  check_keys(sw, {"lambdas"}, "sweep");
  cfg.sweep_lambdas = get<std::vector<double>>(sw, "lambdas", "sweep", {});
  for (double l : cfg.sweep_lambdas) {
    if (!(l >= 0.0)) throw ValidationError("config: sweep.lambdas must be >= 0");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config: '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  json modes = json::array();
  for (const auto& m : cfg.beam.modes) {
    modes.push_back({{"p", m.p}, {"l", m.l}, {"coefficient", {m.coefficient.real(), m.coefficient.imag()}}});
  }
  json geometry = {{"kind", std::string(to_string(cfg.geometry.kind))}};
  if (cfg.geometry.kind == LatticeKind::ring) geometry["sites"] = cfg.geometry.sites;
  if (cfg.geometry.kind == LatticeKind::square) geometry["side"] = cfg.geometry.side;
  json j = {
      {"geometry", geometry},
      {"lattice_constant", cfg.lattice_constant},
      {"beam",
       {{"modes", modes},
        {"waist", cfg.beam.waist},
        {"center_offset", {cfg.beam.center_offset.x, cfg.beam.center_offset.y}},
        {"lg_exponent_convention", cfg.beam.convention == ExponentConvention::paper ? "paper" : "standard"}}},
      {"field", std::string(to_string(cfg.field))},
      {"hopping",
       {{"mode", cfg.hopping.mode == HoppingMode::phase_only ? "phase_only" : "integral"},
        {"sigma", cfg.hopping.sigma},
        {"points_per_axis", cfg.hopping.quadrature.points_per_axis},
        {"window", cfg.hopping.quadrature.window}}},
      {"hop_scale", cfg.hop_scale},
      {"packet",
       {{"site", cfg.packet.site},
        {"width", cfg.packet.width},
        {"spin_weights", {cfg.packet.spin_weights[0], cfg.packet.spin_weights[1]}},
        {"transport", cfg.packet.transport}}},
      {"evolve",
       {{"dt", cfg.evolve.dt},
        {"t_end", cfg.evolve.t_end},
        {"record_stride", cfg.evolve.record_stride},
        {"lambda", cfg.evolve.lambda}}},
      {"outputs",
       {{"formats", cfg.outputs.csv ? json::array({"csv", "json"}) : json::array({"json"})},
        {"images", cfg.outputs.images},
}},
      {"oracle", {{"times", cfg.oracle.times}, {"tolerance", cfg.oracle.tolerance}}},
      {"sweep", {{"lambdas", cfg.sweep_lambdas}}},
  };
  if (cfg.outputs.eps_destructive) j["outputs"]["eps_destructive"] = *cfg.outputs.eps_destructive;
  if (cfg.outputs.theta_constructive) j["outputs"]["theta_constructive"] = *cfg.outputs.theta_constructive;
  return j;
}

}  // namespace solenoid
