#include "anisopd/config.hpp"

#include "anisopd/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace anisopd {

namespace {

enum class Dim { None, Length, Stress, Angle, Time, Density, Velocity, ForceDensity };

struct Unit {
  const char* name;
  Dim dim;
  double scale;
};

constexpr Unit kUnits[] = {
    {"m", Dim::Length, 1.0},         {"cm", Dim::Length, 1e-2},
    {"mm", Dim::Length, 1e-3},       {"um", Dim::Length, 1e-6},
    {"Pa", Dim::Stress, 1.0},        {"kPa", Dim::Stress, 1e3},
    {"MPa", Dim::Stress, 1e6},       {"GPa", Dim::Stress, 1e9},
    {"rad", Dim::Angle, 1.0},        {"deg", Dim::Angle, 0.017453292519943295},
    {"s", Dim::Time, 1.0},           {"ms", Dim::Time, 1e-3},
    {"us", Dim::Time, 1e-6},         {"ns", Dim::Time, 1e-9},
    {"kg/m3", Dim::Density, 1.0},    {"g/cm3", Dim::Density, 1e3},
    {"m/s", Dim::Velocity, 1.0},     {"N/m3", Dim::ForceDensity, 1.0},
};

const char* si_unit(Dim d) {
  switch (d) {
    case Dim::Length: return "m";
    case Dim::Stress: return "Pa";
    case Dim::Angle: return "rad";
    case Dim::Time: return "s";
    case Dim::Density: return "kg/m3";
    case Dim::Velocity: return "m/s";
    case Dim::ForceDensity: return "N/m3";
    case Dim::None: break;
  }
  return "";
}

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::optional<double> to_double(const std::string& t) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

std::vector<double> numbers(const Entry& e, Dim dim, std::size_t count) {
  auto tok = tokens(e.value);
  double scale = 1.0;
  if (!tok.empty() && !to_double(tok.back())) {
    const auto* u = std::find_if(std::begin(kUnits), std::end(kUnits),
                                 [&](const Unit& x) { return tok.back() == x.name; });
    if (u == std::end(kUnits)) throw ConfigError(e.key, e.line, "unknown unit '" + tok.back() + "'");
    if (u->dim != dim) throw ConfigError(e.key, e.line, "unit '" + tok.back() + "' has the wrong dimension");
    scale = u->scale;
    tok.pop_back();
  }
  if (tok.size() != count) {
    throw ConfigError(e.key, e.line, "expected " + std::to_string(count) + " number(s)");
  }
  std::vector<double> out;
  for (const auto& t : tok) {
    const auto v = to_double(t);
    if (!v || !std::isfinite(*v)) throw ConfigError(e.key, e.line, "not a number: '" + t + "'");
    out.push_back(*v * scale);
  }
  return out;
}

double number(const Entry& e, Dim dim) { return numbers(e, dim, 1)[0]; }

long integer(const Entry& e) {
  const std::string v(trim(e.value));
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(e.key, e.line, "expected an integer");
  }
  return out;
}

bool boolean(const Entry& e) {
  const std::string_view v = trim(e.value);
  if (v == "on" || v == "true" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "no") return false;
  throw ConfigError(e.key, e.line, "expected on/off");
}

std::string word(const Entry& e) {
  const auto tok = tokens(e.value);
  if (tok.size() != 1) throw ConfigError(e.key, e.line, "expected a single word");
  return tok[0];
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    parts.push_back(key.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return parts;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct MaterialDraft {
  MaterialConfig config;
  std::set<std::string> fields;
  std::size_t line = 0;
};

void set_material_field(MaterialDraft& d, const std::string& field, const Entry& e) {
  static const std::map<std::string, int> stiffness_index = {
      {"C11", 0}, {"C12", 1}, {"C13", 2}, {"C22", 3}, {"C23", 4}, {"C33", 5}};
  MaterialConfig& m = d.config;
  if (field == "E1") m.constants.E1 = number(e, Dim::Stress);
  else if (field == "E2") m.constants.E2 = number(e, Dim::Stress);
  else if (field == "G12") m.constants.G12 = number(e, Dim::Stress);
  else if (field == "nu12") m.constants.nu12 = number(e, Dim::None);
  else if (auto it = stiffness_index.find(field); it != stiffness_index.end())
    m.stiffness[static_cast<std::size_t>(it->second)] = number(e, Dim::Stress);
  else if (field == "theta") m.theta = number(e, Dim::Angle);
  else if (field == "density") m.density = number(e, Dim::Density);
  else if (field == "sigma_Lu") m.strength.longitudinal = number(e, Dim::Stress);
  else if (field == "sigma_Tu") m.strength.transverse = number(e, Dim::Stress);
  else if (field == "tau_LTu") m.strength.shear = number(e, Dim::Stress);
  else throw ConfigError(e.key, e.line, "unknown material field");
  d.fields.insert(field);
}

void finish_material(MaterialDraft& d) {
  const std::string prefix = "material." + d.config.name + ".";
  const auto has = [&](const char* f) { return d.fields.count(f) > 0; };
  const bool any_constant = has("E1") || has("E2") || has("G12") || has("nu12");
  const bool any_stiffness = has("C11") || has("C12") || has("C13") || has("C22") ||
                             has("C23") || has("C33");
  if (any_constant && any_stiffness) {
    throw ConfigError(prefix + "C11", d.line, "give engineering constants or stiffness, not both");
  }
  const std::vector<const char*> needed =
      any_stiffness ? std::vector<const char*>{"C11", "C12", "C22", "C33"}
                    : std::vector<const char*>{"E1", "E2", "G12", "nu12"};
  d.config.from_constants = !any_stiffness;
  for (const char* f : needed) {
    if (!has(f)) throw ConfigError(prefix + f, d.line, "missing");
  }
  for (const char* f : {"density", "sigma_Lu", "sigma_Tu", "tau_LTu"}) {
    if (!has(f)) throw ConfigError(prefix + f, d.line, "missing");
  }
}

}  // namespace

MaterialRecord MaterialConfig::record() const {
  MaterialRecord r;
  try {
    StiffnessMatrix local;
    if (from_constants) {
      local = build_stiffness(constants);
    } else {
      const auto& c = stiffness;
      local << c[0], c[1], c[2], c[1], c[3], c[4], c[2], c[4], c[5];
    }
    r.stiffness = rotate_stiffness(local, theta);
    r.theta = theta;
    r.density = density;
    r.strength = strength;
    validate(r);
  } catch (const ConstitutiveError& e) {
    throw ConfigError("material." + name, 0, e.what());
  }
  return r;
}

GridSpec ScenarioConfig::grid() const {
  GridSpec g;
  g.origin = Vec2(x0, y0);
  g.width = width;
  g.height = height;
  g.nx = nx;
  g.ny = ny;
  return g;
}

std::vector<const MaterialConfig*> ScenarioConfig::region_materials() const {
  std::vector<const MaterialConfig*> out;
  if (const auto* p = find_material(plate_material)) out.push_back(p);
  for (const auto& m : materials) {
    if (m.name != plate_material) out.push_back(&m);
  }
  return out;
}

const MaterialConfig* ScenarioConfig::find_material(std::string_view name) const {
  for (const auto& m : materials) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

CrackGeometry ScenarioConfig::geometry() const {
  CrackGeometry g;
  for (const auto& c : cracks) {
    g.segments.push_back({Vec2(c.ends[0], c.ends[1]), Vec2(c.ends[2], c.ends[3])});
  }
  for (const auto& h : holes) g.holes.push_back({Vec2(h.circle[0], h.circle[1]), h.circle[2]});
  const auto regions = region_materials();
  for (const auto& inc : inclusions) {
    const auto it = std::find_if(regions.begin(), regions.end(),
                                 [&](const MaterialConfig* m) { return m->name == inc.material; });
    if (it == regions.end()) {
      throw ConfigError("inclusion." + inc.id + ".material", 0, "unknown material");
    }
    g.inclusions.push_back({{Vec2(inc.circle[0], inc.circle[1]), inc.circle[2]},
                            static_cast<RegionId>(it - regions.begin())});
  }
  return g;
}

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError(std::string(text), 0, "override must be key=value");
  return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

ScenarioConfig parse_config(std::string_view text, const std::vector<Override>& overrides) {
  std::vector<Entry> entries;
  std::map<std::string, std::size_t> index;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
    Entry e{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
    if (e.key.empty()) throw ConfigError("", line_no, "empty key");
    if (index.count(e.key)) throw ConfigError(e.key, line_no, "duplicate key");
    index[e.key] = entries.size();
    entries.push_back(std::move(e));
  }
  for (const auto& [key, value] : overrides) {
    if (auto it = index.find(key); it != index.end()) {
      entries[it->second].value = value;
      entries[it->second].line = 0;
    } else {
      index[key] = entries.size();
      entries.push_back({key, value, 0});
    }
  }

  ScenarioConfig c;
  std::vector<MaterialDraft> drafts;
  std::map<std::string, std::size_t> inclusion_index;
  std::map<std::string, std::string> inclusion_material;
  std::map<std::string, std::size_t> inclusion_material_line;
  std::optional<DsifConfig> dsif;
  std::set<std::string> dsif_keys;
  std::set<std::string> seen;

  for (const auto& e : entries) {
    const auto parts = split_key(e.key);
    const std::string& head = parts[0];
    seen.insert(e.key);
    if (e.key == "name") c.name = word(e);
    else if (e.key == "domain.width") c.width = number(e, Dim::Length);
    else if (e.key == "domain.height") c.height = number(e, Dim::Length);
    else if (e.key == "domain.x0") c.x0 = number(e, Dim::Length);
    else if (e.key == "domain.y0") c.y0 = number(e, Dim::Length);
    else if (e.key == "grid.nx") c.nx = static_cast<int>(integer(e));
    else if (e.key == "grid.ny") c.ny = static_cast<int>(integer(e));
    else if (e.key == "horizon_factor") c.horizon_factor = number(e, Dim::None);
    else if (e.key == "plate.material") c.plate_material = word(e);
    else if (head == "material" && parts.size() == 3) {
      auto it = std::find_if(drafts.begin(), drafts.end(),
                             [&](const MaterialDraft& d) { return d.config.name == parts[1]; });
      if (it == drafts.end()) {
        drafts.push_back({});
        drafts.back().config.name = parts[1];
        drafts.back().line = e.line;
        it = drafts.end() - 1;
      }
      set_material_field(*it, parts[2], e);
    } else if (head == "crack" && parts.size() == 2) {
      const auto v = numbers(e, Dim::Length, 4);
      c.cracks.push_back({parts[1], {v[0], v[1], v[2], v[3]}});
    } else if (head == "hole" && parts.size() == 2) {
      const auto v = numbers(e, Dim::Length, 3);
      c.holes.push_back({parts[1], {v[0], v[1], v[2]}, ""});
    } else if (head == "inclusion" && parts.size() == 2) {
      const auto v = numbers(e, Dim::Length, 3);
      inclusion_index[parts[1]] = c.inclusions.size();
      c.inclusions.push_back({parts[1], {v[0], v[1], v[2]}, ""});
    } else if (head == "inclusion" && parts.size() == 3 && parts[2] == "material") {
      inclusion_material[parts[1]] = word(e);
      inclusion_material_line[parts[1]] = e.line;
    } else if (e.key == "velocity.amplitude") c.velocity_amplitude = number(e, Dim::Velocity);
    else if (e.key == "body_force") {
      const auto v = numbers(e, Dim::ForceDensity, 2);
      c.body_force = {v[0], v[1]};
    } else if (e.key == "damage") c.damage = boolean(e);
    else if (e.key == "integrator") {
      const std::string v = word(e);
      if (v == "backward") c.update = DisplacementUpdate::Backward;
      else if (v == "forward") c.update = DisplacementUpdate::Forward;
      else throw ConfigError(e.key, e.line, "expected backward or forward");
    } else if (e.key == "total_time") c.total_time = number(e, Dim::Time);
    else if (e.key == "snapshot_every") c.snapshot_every = integer(e);
    else if (head == "dsif" && parts.size() == 2) {
      if (!dsif) dsif.emplace();
      dsif_keys.insert(parts[1]);
      if (parts[1] == "tip") {
        const auto v = numbers(e, Dim::Length, 2);
        dsif->tip = {v[0], v[1]};
      } else if (parts[1] == "direction") {
        const auto v = numbers(e, Dim::None, 2);
        if (std::hypot(v[0], v[1]) == 0.0) throw ConfigError(e.key, e.line, "direction must be nonzero");
        dsif->direction = {v[0], v[1]};
      } else if (parts[1] == "rbar") {
        dsif->rbar = number(e, Dim::Length);
        if (dsif->rbar < 0.0) throw ConfigError(e.key, e.line, "must be non-negative");
      } else if (parts[1] == "every") {
        dsif->every = integer(e);
        if (dsif->every < 1) throw ConfigError(e.key, e.line, "must be at least 1");
      } else if (parts[1] == "material") {
        dsif->material = word(e);
      } else {
        throw ConfigError(e.key, e.line, "unknown key");
      }
    } else if (e.key == "output_dir") c.output_dir = std::string(trim(e.value));
    else if (e.key == "workers") c.workers = static_cast<int>(integer(e));
    else if (e.key == "failure_log") c.failure_log = boolean(e);
    else if (e.key == "seed") c.seed = integer(e);
    else if (e.key == "stabilization") {
      if (boolean(e)) throw ConfigError(e.key, e.line, "zero-energy-mode stabilization is not implemented");
    } else throw ConfigError(e.key, e.line, "unknown key");
  }

  const auto line_of = [&](const std::string& key) -> std::size_t {
    const auto it = index.find(key);
    return it == index.end() ? 0 : entries[it->second].line;
  };
  for (const char* key : {"domain.width", "domain.height", "grid.nx", "grid.ny"}) {
    if (!seen.count(key)) throw ConfigError(key, 0, "missing");
  }
  if (!(c.width > 0.0)) throw ConfigError("domain.width", line_of("domain.width"), "must be positive");
  if (!(c.height > 0.0)) throw ConfigError("domain.height", line_of("domain.height"), "must be positive");
  if (c.nx < 2) throw ConfigError("grid.nx", line_of("grid.nx"), "must be at least 2");
  if (c.ny < 2) throw ConfigError("grid.ny", line_of("grid.ny"), "must be at least 2");
  if (!(c.horizon_factor >= 1.0)) {
    throw ConfigError("horizon_factor", line_of("horizon_factor"), "must be at least 1");
  }
  if (!(c.total_time >= 0.0)) throw ConfigError("total_time", line_of("total_time"), "must be non-negative");
  if (c.snapshot_every < 0) {
    throw ConfigError("snapshot_every", line_of("snapshot_every"), "must be non-negative");
  }
  if (c.workers < 1) throw ConfigError("workers", line_of("workers"), "must be at least 1");

  for (auto& d : drafts) {
    finish_material(d);
    c.materials.push_back(d.config);
  }
  if (!c.find_material(c.plate_material)) {
    throw ConfigError("plate.material", line_of("plate.material"),
                      "no material named '" + c.plate_material + "'");
  }
  for (const auto& m : c.materials) (void)m.record();

  for (const auto& [id, mat] : inclusion_material) {
    const auto it = inclusion_index.find(id);
    if (it == inclusion_index.end()) {
      throw ConfigError("inclusion." + id + ".material", inclusion_material_line[id],
                        "no circle for inclusion '" + id + "'");
    }
    if (!c.find_material(mat)) {
      throw ConfigError("inclusion." + id + ".material", inclusion_material_line[id],
                        "no material named '" + mat + "'");
    }
    c.inclusions[it->second].material = mat;
  }
  for (const auto& inc : c.inclusions) {
    if (inc.material.empty()) throw ConfigError("inclusion." + inc.id + ".material", 0, "missing");
  }
  for (const auto& cr : c.cracks) {
    if (cr.ends[0] == cr.ends[2] && cr.ends[1] == cr.ends[3]) {
      throw ConfigError("crack." + cr.id, line_of("crack." + cr.id), "segment has zero length");
    }
  }
  if (dsif) {
    if (!dsif_keys.count("tip")) throw ConfigError("dsif.tip", 0, "missing");
    if (!dsif->material.empty() && !c.find_material(dsif->material)) {
      throw ConfigError("dsif.material", line_of("dsif.material"), "unknown material");
    }
  }
  c.dsif = dsif;
  return c;
}

std::string format_config(const ScenarioConfig& c) {
  std::ostringstream out;
  const auto put = [&](const std::string& key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  const auto put_num = [&](const std::string& key, double v, Dim d) {
    const char* u = si_unit(d);
    put(key, fmt(v) + (*u ? std::string(" ") + u : ""));
  };
  put("name", c.name);
  put_num("domain.width", c.width, Dim::Length);
  put_num("domain.height", c.height, Dim::Length);
  put_num("domain.x0", c.x0, Dim::Length);
  put_num("domain.y0", c.y0, Dim::Length);
  put("grid.nx", std::to_string(c.nx));
  put("grid.ny", std::to_string(c.ny));
  put_num("horizon_factor", c.horizon_factor, Dim::None);
  put("plate.material", c.plate_material);
  for (const auto& m : c.materials) {
    const std::string p = "material." + m.name + ".";
    if (m.from_constants) {
      put_num(p + "E1", m.constants.E1, Dim::Stress);
      put_num(p + "E2", m.constants.E2, Dim::Stress);
      put_num(p + "G12", m.constants.G12, Dim::Stress);
      put_num(p + "nu12", m.constants.nu12, Dim::None);
    } else {
      const char* names[6] = {"C11", "C12", "C13", "C22", "C23", "C33"};
      for (int k = 0; k < 6; ++k) put_num(p + names[k], m.stiffness[k], Dim::Stress);
    }
    put_num(p + "theta", m.theta, Dim::Angle);
    put_num(p + "density", m.density, Dim::Density);
    put_num(p + "sigma_Lu", m.strength.longitudinal, Dim::Stress);
    put_num(p + "sigma_Tu", m.strength.transverse, Dim::Stress);
    put_num(p + "tau_LTu", m.strength.shear, Dim::Stress);
  }
  for (const auto& cr : c.cracks) {
    put("crack." + cr.id, fmt(cr.ends[0]) + " " + fmt(cr.ends[1]) + " " + fmt(cr.ends[2]) + " " +
                              fmt(cr.ends[3]) + " m");
  }
  for (const auto& h : c.holes) {
    put("hole." + h.id, fmt(h.circle[0]) + " " + fmt(h.circle[1]) + " " + fmt(h.circle[2]) + " m");
  }
  for (const auto& inc : c.inclusions) {
    put("inclusion." + inc.id,
        fmt(inc.circle[0]) + " " + fmt(inc.circle[1]) + " " + fmt(inc.circle[2]) + " m");
    put("inclusion." + inc.id + ".material", inc.material);
  }
  put_num("velocity.amplitude", c.velocity_amplitude, Dim::Velocity);
  put("body_force", fmt(c.body_force[0]) + " " + fmt(c.body_force[1]) + " N/m3");
  put("damage", c.damage ? "on" : "off");
  put("integrator", c.update == DisplacementUpdate::Backward ? "backward" : "forward");
  put_num("total_time", c.total_time, Dim::Time);
  put("snapshot_every", std::to_string(c.snapshot_every));
  if (c.dsif) {
    put("dsif.tip", fmt(c.dsif->tip[0]) + " " + fmt(c.dsif->tip[1]) + " m");
    put("dsif.direction", fmt(c.dsif->direction[0]) + " " + fmt(c.dsif->direction[1]));
    put_num("dsif.rbar", c.dsif->rbar, Dim::Length);
    put("dsif.every", std::to_string(c.dsif->every));
    if (!c.dsif->material.empty()) put("dsif.material", c.dsif->material);
  }
  put("output_dir", c.output_dir);
  put("workers", std::to_string(c.workers));
  put("failure_log", c.failure_log ? "on" : "off");
  put("seed", std::to_string(c.seed));
  put("stabilization", "off");
  return out.str();
}

namespace {

constexpr const char* kEdgeCrack = R"(# Square plate with an edge crack, stretched by an initial velocity field.
name = edge_crack
domain.width = 0.1 m
domain.height = 0.2 m
domain.x0 = -0.05 m
domain.y0 = -0.1 m
grid.nx = 400
grid.ny = 800
horizon_factor = 2

# symmetric angle-ply graphite-epoxy laminate
material.plate.E1 = 144.8 GPa
material.plate.E2 = 11.7 GPa
material.plate.G12 = 9.66 GPa
material.plate.nu12 = 0.21
material.plate.density = 2710 kg/m3
material.plate.theta = 30 deg
material.plate.sigma_Lu = 1670 MPa
material.plate.sigma_Tu = 60 MPa
material.plate.tau_LTu = 70 MPa

crack.edge = -0.05 0 0 0 m
velocity.amplitude = 50 m/s
damage = off
total_time = 60 us
snapshot_every = 5000

dsif.tip = 0 0 m
dsif.direction = 1 0
dsif.every = 10
)";

constexpr const char* kCentredCrack = R"(# Rectangular HTA/6376 plate with a centred crack; crack growth by Tsai-Hill.
name = centred_crack
domain.width = 125 mm
domain.height = 250 mm
domain.x0 = -62.5 mm
domain.y0 = -125 mm
grid.nx = 300
grid.ny = 600
horizon_factor = 3

material.plate.E1 = 136 GPa
material.plate.E2 = 8.75 GPa
material.plate.G12 = 5.5 GPa
material.plate.nu12 = 0.3
material.plate.density = 1586 kg/m3
material.plate.theta = 45 deg
material.plate.sigma_Lu = 1670 MPa
material.plate.sigma_Tu = 60 MPa
material.plate.tau_LTu = 70 MPa

crack.centre = -25 0 25 0 mm
velocity.amplitude = 50 m/s
damage = on
total_time = 35 us
snapshot_every = 500
)";

constexpr const char* kInclusionHole = R"(# Edge-cracked plate with a stiff inclusion above and a hole below the crack line.
name = inclusion_hole
domain.width = 20 mm
domain.height = 40 mm
domain.x0 = -10 mm
domain.y0 = -20 mm
grid.nx = 200
grid.ny = 400
horizon_factor = 2

plate.material = plate
material.plate.C11 = 155.43 GPa
material.plate.C12 = 3.72 GPa
material.plate.C13 = 0 GPa
material.plate.C22 = 16.34 GPa
material.plate.C23 = 0 GPa
material.plate.C33 = 7.48 GPa
material.plate.theta = 45 deg
material.plate.density = 1600 kg/m3
material.plate.sigma_Lu = 1670 MPa
material.plate.sigma_Tu = 60 MPa
material.plate.tau_LTu = 70 MPa

material.inclusion.C11 = 235 GPa
material.inclusion.C12 = 3.69 GPa
material.inclusion.C13 = 0 GPa
material.inclusion.C22 = 2 GPa
material.inclusion.C23 = 0 GPa
material.inclusion.C33 = 28.2 GPa
material.inclusion.theta = 0 deg
material.inclusion.density = 5670 kg/m3
material.inclusion.sigma_Lu = 3920 MPa
material.inclusion.sigma_Tu = 3920 MPa
material.inclusion.tau_LTu = 3920 MPa

crack.edge = -10 0 -6 0 mm
inclusion.upper = 0 8 4.5 mm
inclusion.upper.material = inclusion
hole.lower = 0 -8 4.5 mm
velocity.amplitude = 50 m/s
damage = off
total_time = 20 us
snapshot_every = 5000

dsif.tip = -6 0 mm
dsif.direction = 1 0
dsif.every = 10
dsif.material = plate
)";

}  // namespace

std::vector<std::string> preset_names() { return {"edge_crack", "centred_crack", "inclusion_hole"}; }

std::string preset_text(std::string_view name) {
  if (name == "edge_crack") return kEdgeCrack;
  if (name == "centred_crack") return kCentredCrack;
  if (name == "inclusion_hole") return kInclusionHole;
  throw ConfigError("preset", 0, "unknown preset '" + std::string(name) + "'");
}

ScenarioConfig preset(std::string_view name, const std::vector<Override>& overrides) {
  return parse_config(preset_text(name), overrides);
}

ScenarioConfig with_grid(ScenarioConfig config, int cells) {
  config.nx = cells;
  config.ny = static_cast<int>(std::lround(cells * config.height / config.width));
  return config;
}

}  // namespace anisopd
