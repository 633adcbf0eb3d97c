#include "anisopd/scenario.hpp"

#include "anisopd/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace anisopd {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

std::string snapshot_name(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06ld.csv", step);
  return buf;
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

Scenario setup(const ScenarioConfig& config, const std::function<void(const std::string&)>& warn) {
  Scenario sc;
  sc.config = config;
  SimulationState& s = sc.state;
  for (const MaterialConfig* m : config.region_materials()) s.materials.push_back(m->record());
  s.geometry = config.geometry();
  s.particles = generate_grid(config.grid(), s.geometry);
  s.bonds = build_bonds(s.particles, config.horizon(), s.geometry);
  if (warn) {
    const auto weak = underconnected_particles(s.particles, s.bonds);
    if (!weak.empty()) {
      warn(std::to_string(weak.size()) +
           " particle(s) lack two non-collinear bonds and are excluded from force computation");
    }
  }
  s.initialize_fields();
  if (config.body_force[0] != 0.0 || config.body_force[1] != 0.0) {
    s.body_force.assign(s.particles.size(), Vec2(config.body_force[0], config.body_force[1]));
  }
  s.dt = critical_time_step(config.horizon(), max_wave_speed(s));
  sc.total_steps =
      config.total_time > 0.0 ? static_cast<long>(std::ceil(config.total_time / s.dt - 1e-9)) : 0;
  apply_initial_velocity(s, config.velocity_amplitude, config.height,
                         config.y0 + 0.5 * config.height);

  if (config.dsif) {
    const DsifConfig& d = *config.dsif;
    DsifProbe probe;
    probe.tip = Vec2(d.tip[0], d.tip[1]);
    probe.direction = Vec2(d.direction[0], d.direction[1]).normalized();
    probe.rbar = d.rbar > 0.0 ? d.rbar : 3.0 * config.spacing();
    probe.every = d.every;
    const std::string& name = d.material.empty() ? config.plate_material : d.material;
    probe.stroh = stroh_matrices(config.find_material(name)->record());
    sc.dsif = probe;
  }
  return sc;
}

DsifSample sample_dsif(const SimulationState& state, const DsifProbe& probe) {
  const Vec2 du = crack_opening(state, probe.tip, probe.direction, probe.rbar);
  const ModeFactors k = dsif(du, probe.stroh, probe.rbar);
  return {state.time, k.K_I, k.K_II};
}

RunResult run(Scenario& sc, const RunOptions& options) {
  const ScenarioConfig& cfg = sc.config;
  SimulationState& s = sc.state;
  const auto start = std::chrono::steady_clock::now();
  RunResult result;

  const std::filesystem::path dir(cfg.output_dir);
  std::ofstream failures;
  if (options.write_files) {
    std::filesystem::create_directories(dir);
    open_output(dir / "effective_config.txt") << format_config(cfg);
    if (cfg.failure_log && cfg.damage) {
      failures = open_output(dir / "failures.csv");
      failures << "step,j,n,tsai_hill\n";
    }
  }

  const auto snapshot = [&] {
    if (!options.write_files) return;
    const auto path = dir / snapshot_name(s.step);
    write_snapshot(capture(s, cfg.workers), path);
    result.snapshots.push_back(path);
  };

  StepOptions opts;
  opts.damage = cfg.damage;
  opts.update = cfg.update;
  opts.workers = cfg.workers;

  snapshot();
  if (options.observer) options.observer(s);
  if (sc.dsif) result.dsif.push_back(sample_dsif(s, *sc.dsif));

  double max_damage = max_of(damage_field(s.bonds, cfg.workers));
  bool damage_stale = false;
  long last_snapshot = 0;
  for (long k = 0; k < sc.total_steps; ++k) {
    const auto events = step(s, opts);
    result.broken_bonds += events.size();
    if (!events.empty()) damage_stale = true;
    if (failures.is_open()) {
      char buf[96];
      for (const auto& e : events) {
        std::snprintf(buf, sizeof buf, "%ld,%zu,%zu,%.9e\n", e.step, e.particle_j, e.particle_n,
                      e.tsai_hill_value);
        failures << buf;
      }
    }
    if (sc.dsif && s.step % sc.dsif->every == 0) result.dsif.push_back(sample_dsif(s, *sc.dsif));
    if (cfg.snapshot_every > 0 && s.step % cfg.snapshot_every == 0) {
      snapshot();
      last_snapshot = s.step;
    }
    if (options.observer) options.observer(s);
    if (options.progress) {
      if (damage_stale) {
        max_damage = max_of(damage_field(s.bonds, cfg.workers));
        damage_stale = false;
      }
      options.progress({s.step, s.time, result.broken_bonds, max_damage});
    }
  }
  if (s.step != last_snapshot) snapshot();

  result.steps = s.step;
  result.max_damage = max_of(damage_field(s.bonds, cfg.workers));
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream summary;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "scenario %s\nparticles %zu\nbonds %zu\ndt %.9e s\nsteps %ld\nfinal_time %.9e s\n"
                "wall_time %.3f s\nbroken_bonds %zu\nmax_damage %.6f\n",
                cfg.name.c_str(), s.particles.size(), s.bonds.bond_count() / 2, s.dt, s.step, s.time,
                result.wall_seconds, result.broken_bonds, result.max_damage);
  summary << buf;
  if (options.write_files) {
    if (sc.dsif) write_dsif_series(result.dsif, dir / "dsif.csv");
    open_output(dir / "summary.txt") << summary.str();
  }
  if (options.log) *options.log << summary.str();
  return result;
}

RunResult run(const ScenarioConfig& config, const RunOptions& options) {
  std::function<void(const std::string&)> warn;
  if (options.log) warn = [&](const std::string& m) { *options.log << "warning: " << m << '\n'; };
  Scenario sc = setup(config, warn);
  return run(sc, options);
}

FieldSnapshot capture(const SimulationState& state, int workers) {
  FieldSnapshot f;
  f.step = state.step;
  f.time = state.time;
  f.dx = state.particles.dx;
  f.dy = state.particles.dy;
  f.position = state.particles.position;
  f.displacement = state.kin.u;
  f.damage = damage_field(state.bonds, workers);
  f.region = state.particles.region;
  return f;
}

void write_snapshot(const FieldSnapshot& s, std::ostream& os) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "# step=%ld time=%.9e\n# dx=%.9e dy=%.9e\n", s.step, s.time, s.dx,
                s.dy);
  os << buf << "x,y,ux,uy,phi,region\n";
  for (std::size_t j = 0; j < s.position.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.9e,%.9e,%.9e,%u\n", s.position[j].x(),
                  s.position[j].y(), s.displacement[j].x(), s.displacement[j].y(), s.damage[j],
                  static_cast<unsigned>(s.region[j]));
    os << buf;
  }
}

void write_snapshot(const FieldSnapshot& s, const std::filesystem::path& path) {
  auto os = open_output(path);
  write_snapshot(s, os);
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

FieldSnapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  FieldSnapshot s;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (std::sscanf(line.c_str(), "# step=%ld time=%lf", &s.step, &s.time) == 2) continue;
      std::sscanf(line.c_str(), "# dx=%lf dy=%lf", &s.dx, &s.dy);
      continue;
    }
    if (!header) {
      if (line != "x,y,ux,uy,phi,region") {
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad header");
      }
      header = true;
      continue;
    }
    double x, y, ux, uy, phi;
    unsigned region;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%u", &x, &y, &ux, &uy, &phi, &region) != 6) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad row");
    }
    s.position.emplace_back(x, y);
    s.displacement.emplace_back(ux, uy);
    s.damage.push_back(phi);
    s.region.push_back(static_cast<RegionId>(region));
  }
  if (!header) throw std::runtime_error(path.string() + ": missing header");
  return s;
}

void write_dsif_series(std::span<const DsifSample> series, std::ostream& os) {
  os << "time_s,KI_Pa_sqrt_m,KII_Pa_sqrt_m\n";
  char buf[96];
  for (const auto& d : series) {
    std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.9e\n", d.time, d.K_I, d.K_II);
    os << buf;
  }
}

void write_dsif_series(std::span<const DsifSample> series, const std::filesystem::path& path) {
  auto os = open_output(path);
  write_dsif_series(series, os);
}

std::vector<DsifSample> read_dsif_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "time_s,KI_Pa_sqrt_m,KII_Pa_sqrt_m") {
    throw std::runtime_error(path.string() + ": expected header time_s,KI_Pa_sqrt_m,KII_Pa_sqrt_m");
  }
  std::vector<DsifSample> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    DsifSample d;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &d.time, &d.K_I, &d.K_II) != 3) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad row");
    }
    if (!out.empty() && d.time < out.back().time) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": time decreases");
    }
    out.push_back(d);
  }
  return out;
}

std::vector<ConvergenceEntry> convergence_study(
    const ScenarioConfig& base, const std::vector<int>& cells, const std::vector<int>& factors,
    const std::optional<std::vector<DsifSample>>& reference, std::ostream* log) {
  if (!base.dsif) throw ConfigError("dsif.tip", 0, "convergence study needs a DSIF probe");
  std::vector<ConvergenceEntry> out;
  for (const int n : factors) {
    for (const int c : cells) {
      ScenarioConfig cfg = with_grid(base, c);
      cfg.horizon_factor = n;
      cfg.damage = false;
      ConvergenceEntry e;
      e.cells = c;
      e.horizon_factor = n;
      RunOptions opts;
      opts.write_files = false;
      e.series = run(cfg, opts).dsif;
      if (log) *log << "grid " << c << " n " << n << ": " << e.series.size() << " samples\n";
      out.push_back(std::move(e));
    }
  }
  const int finest = cells.empty() ? 0 : *std::max_element(cells.begin(), cells.end());
  for (auto& e : out) {
    const std::vector<DsifSample>* ref = reference ? &*reference : nullptr;
    if (!ref) {
      for (const auto& other : out) {
        if (other.cells == finest && other.horizon_factor == e.horizon_factor) ref = &other.series;
      }
    }
    e.mode_I = l2_error(e.series, *ref, Mode::I);
    e.mode_II = l2_error(e.series, *ref, Mode::II);
  }
  return out;
}

}  // namespace anisopd
