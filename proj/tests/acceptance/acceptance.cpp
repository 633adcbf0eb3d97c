// Acceptance criteria. Usage: anisopd-acceptance [criterion ...]; no arguments runs all.
// Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include "anisopd/damage.hpp"
#include "anisopd/scenario.hpp"

#include "support/bridge.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace anisopd;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path work_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "anisopd_acceptance" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Affine patch test.
Outcome affine_patch() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> g(-1.0, 1.0), m(0.0, 1e-3);
  MaterialRecord mat;
  mat.stiffness = rotate_stiffness(build_stiffness({144.8e9, 11.7e9, 9.66e9, 0.21}), kPi / 6);
  mat.density = 2710.0;
  mat.strength = {1670e6, 60e6, 70e6};
  const std::vector<MaterialRecord> mats{mat};
  double worst_F = 0.0, worst_eps = 0.0, worst_force = 0.0;
  std::size_t checked_F = 0, checked_force = 0;
  for (int n : {2, 3, 4}) {
    GridSpec grid;
    grid.width = grid.height = 50e-3;
    grid.nx = grid.ny = 50;
    const ParticleSet particles = generate_grid(grid, {});
    const double delta = n * 1e-3;
    const BondSet bonds = build_bonds(particles, delta, {});
    std::size_t full = 0;
    for (std::size_t j = 0; j < particles.size(); ++j) full = std::max(full, bonds.end(j) - bonds.begin(j));
    std::vector<char> complete(particles.size());
    for (std::size_t j = 0; j < particles.size(); ++j) complete[j] = bonds.end(j) - bonds.begin(j) == full;
    for (int trial = 0; trial < 20; ++trial) {
      Mat2 G;
      G << g(rng), g(rng), g(rng), g(rng);
      G *= m(rng) / G.norm();
      std::vector<Vec2> u;
      for (const auto& x : particles.position) u.push_back(G * x);
      TensorState t;
      std::vector<Vec2> f(u.size());
      compute_tensors(particles, bonds, mats, u, t, 1);
      compute_forces(bonds, t, f, 1);
      const Voigt eps_ref(G(0, 0), G(1, 1), G(0, 1) + G(1, 0));
      const Voigt sigma = mat.stiffness * eps_ref;
      for (std::size_t j = 0; j < particles.size(); ++j) {
        if (!complete[j]) continue;
        ++checked_F;
        worst_F = std::max(worst_F, (t.deformation[j] - Mat2::Identity() - G).cwiseAbs().maxCoeff());
        worst_eps = std::max(worst_eps, (t.strain[j] - eps_ref).norm() / eps_ref.norm());
        bool inner = true;
        double ref = 0.0;
        for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
          inner = inner && complete[bonds.neighbor[b]];
          ref += bonds.weight[b] * bonds.neighbor_volume[b] * bonds.xi[b].norm();
        }
        if (!inner) continue;
        ++checked_force;
        ref *= 2.0 * stress_matrix(sigma).norm() * t.shape[j].norm();
        worst_force = std::max(worst_force, f[j].norm() / ref);
      }
    }
  }
  const bool pass = worst_F <= 1e-10 && worst_eps <= 1e-10 && worst_force <= 1e-10 &&
                    checked_force > 0;
  return {pass, fmt("max|F-(I+G)|=%.2e max rel strain err=%.2e max rel force=%.2e over %zu/%zu "
                    "particle checks (tol 1e-10)",
                    worst_F, worst_eps, worst_force, checked_F, checked_force)};
}

// 2. Optimized kernel against the dense double loop.
Outcome oracle_equivalence() {
  std::mt19937_64 rng(2026);
  double worst_force = 0.0, worst_B = 0.0, worst_F = 0.0;
  std::size_t flag_mismatch = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const naive::System s = naive::random_system(rng);
    const naive::Result ref = naive::evaluate(s);
    const naive::Optimized opt = naive::run_optimized(s);
    worst_force = std::max(worst_force, naive::force_mismatch(ref, opt));
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      for (std::size_t m = 0; m < s.x.size(); ++m) {
        const std::size_t k = opt.bonds.find(j, m);
        const int got = k == opt.bonds.bond_count() ? -1 : int(opt.bonds.active[k]);
        flag_mismatch += got != ref.bonded[j][m];
      }
      flag_mismatch += int(opt.tensors.singular[j]) != ref.singular[j];
      worst_B = std::max(worst_B, (opt.tensors.shape[j] - ref.B[j]).norm() / ref.B[j].norm());
      worst_F = std::max(worst_F, (opt.tensors.deformation[j] - ref.F[j]).norm() / ref.F[j].norm());
    }
  }
  const bool pass = flag_mismatch == 0 && worst_force <= 1e-12 && worst_B <= 1e-12 && worst_F <= 1e-12;
  return {pass, fmt("100 systems: force rel err=%.2e B rel err=%.2e F rel err=%.2e bond/singular "
                    "mismatches=%zu (tol 1e-12)",
                    worst_force, worst_B, worst_F, flag_mismatch)};
}

ScenarioConfig momentum_config() {
  ScenarioConfig c = with_grid(preset("centred_crack"), 60);
  c.horizon_factor = 3.0;
  c.damage = true;
  c.snapshot_every = 500;
  return c;
}

// 3. Linear momentum over 2000 damaging steps.
Outcome momentum() {
  Scenario sc = setup(momentum_config());
  sc.total_steps = 2000;
  const Vec2 p0 = linear_momentum(sc.state);
  double worst = 0.0;
  RunOptions o;
  o.write_files = false;
  o.observer = [&](const SimulationState& s) {
    const double scale = momentum_scale(s);
    worst = std::max(worst, (linear_momentum(s) - p0).norm() / scale);
  };
  const RunResult r = run(sc, o);
  return {worst <= 1e-9 && r.steps == 2000,
          fmt("%ld steps, %zu bonds broken, max |P-P0|/sum(rho|v|V)=%.2e (tol 1e-9)", r.steps,
              r.broken_bonds, worst)};
}

// 4. Mode II vanishes on the symmetric edge crack; mode I onset against h/c_p.
Outcome edge_symmetry() {
  ScenarioConfig c = with_grid(preset("edge_crack", {{"material.plate.theta", "0 deg"}}), 100);
  c.damage = false;
  c.output_dir = work_dir("c4").string();
  Scenario sc = setup(c);
  RunOptions o;
  o.write_files = true;
  const RunResult r = run(sc, o);
  double kI_max = 0.0, kII_max = 0.0;
  std::size_t at_max = 0;
  for (std::size_t k = 0; k < r.dsif.size(); ++k) {
    if (std::abs(r.dsif[k].K_I) > kI_max) {
      kI_max = std::abs(r.dsif[k].K_I);
      at_max = k;
    }
    kII_max = std::max(kII_max, std::abs(r.dsif[k].K_II));
  }
  const MaterialRecord m = c.materials[0].record();
  const double arrival = 0.5 * c.height / dilatational_wave_speed(m);
  std::size_t onset = r.dsif.size();
  for (std::size_t k = 0; k < r.dsif.size(); ++k) {
    if (std::abs(r.dsif[k].K_I) >= 0.05 * kI_max) {
      onset = k;
      break;
    }
  }
  const bool symmetric = kI_max > 0.0 && kII_max <= 0.02 * kI_max;
  const double t_on = onset < r.dsif.size() ? r.dsif[onset].time : -1.0;
  const bool timed = t_on >= 0.8 * arrival && t_on <= 1.2 * arrival;
  const bool rising = onset < r.dsif.size() && at_max > onset &&
                      r.dsif[at_max].K_I > r.dsif[onset].K_I;
  return {symmetric && timed && rising,
          fmt("max|K_II|/max|K_I|=%.2e (tol 0.02) [%s]; K_I onset (5%% of max) at %.2f us vs "
              "h/c_p=%.2f us, window [%.2f, %.2f] [%s]; rises after onset [%s]",
              kI_max > 0 ? kII_max / kI_max : 0.0, symmetric ? "ok" : "fail", t_on * 1e6,
              arrival * 1e6, 0.8 * arrival * 1e6, 1.2 * arrival * 1e6, timed ? "ok" : "fail",
              rising ? "ok" : "fail")};
}

// 5. Self-convergence of the mode I DSIF series.
Outcome self_convergence() {
  ScenarioConfig base = preset("edge_crack", {{"material.plate.theta", "30 deg"}});
  const auto table = convergence_study(base, {100, 150, 200}, {2});
  std::string detail;
  bool pass = table.size() == 3;
  for (std::size_t k = 0; k < table.size(); ++k) {
    detail += fmt("%dx%d: e_I=%.4f ", table[k].cells, 2 * table[k].cells, table[k].mode_I.value);
    if (!table[k].mode_I.defined) pass = false;
    if (k > 0 && !(table[k].mode_I.value < table[k - 1].mode_I.value)) pass = false;
  }
  return {pass, detail + "(strictly decreasing required)"};
}

// 6. Tsai-Hill index on the failure surface.
Outcome tsai_hill_surface() {
  const Strengths s{1670e6, 60e6, 70e6};
  const double a = tsai_hill_index({s.longitudinal, 0, 0}, s);
  const double b = tsai_hill_index({0, s.transverse, 0}, s);
  const double c = tsai_hill_index({0, 0, s.shear}, s);
  const double worst = std::max({std::abs(a - 1), std::abs(b - 1), std::abs(c - 1)});
  return {worst <= 1e-12, fmt("indices %.17g %.17g %.17g, max deviation %.2e (tol 1e-12)", a, b, c, worst)};
}

// 7. Crack path direction follows the fibre angle.
Outcome crack_paths() {
  const std::map<int, double> stop_us{{0, 32.85}, {45, 23.87}, {60, 22.24}, {90, 23.17}};
  bool pass = true;
  std::string detail;
  for (const auto& [theta, t_us] : stop_us) {
    ScenarioConfig c = with_grid(
        preset("centred_crack", {{"material.plate.theta", std::to_string(theta) + " deg"}}), 150);
    c.horizon_factor = 3.0;
    c.velocity_amplitude = 50.0;
    c.total_time = t_us * 1e-6;
    c.damage = true;
    Scenario sc = setup(c);
    const std::vector<double> phi0 = damage_field(sc.state.bonds);
    RunOptions o;
    o.write_files = false;
    const RunResult r = run(sc, o);
    std::vector<double> grown = damage_field(sc.state.bonds);
    for (std::size_t j = 0; j < grown.size(); ++j) grown[j] = std::max(0.0, grown[j] - phi0[j]);
    const CrackPath path = crack_path(sc.state.particles.position, grown, c.spacing());
    bool ok = path.dominant_angle_deg.has_value() &&
              axial_angle_difference(*path.dominant_angle_deg, theta) <= 7.0;
    std::string extra;
    if (theta == 90 && ok) {
      bool spans = false;
      if (!path.branches.empty()) {
        double lo = 0.0, hi = 0.0;
        for (std::size_t j : path.branches[0].members) {
          lo = std::min(lo, sc.state.particles.position[j].y());
          hi = std::max(hi, sc.state.particles.position[j].y());
        }
        spans = lo < -c.horizon() && hi > c.horizon();
      }
      const bool branched = path.branches.size() >= 2 || spans;
      extra = fmt(" branches=%zu spans_both=%s", path.branches.size(), spans ? "yes" : "no");
      ok = ok && branched;
    }
    pass = pass && ok;
    detail += fmt("theta=%d: %zu bonds broken, dominant=%s%s [%s]; ", theta, r.broken_bonds,
                  path.dominant_angle_deg ? fmt("%.1f deg", *path.dominant_angle_deg).c_str() : "none",
                  extra.c_str(), ok ? "ok" : "fail");
  }
  return {pass, detail + "(tol 7 deg)"};
}

// 8. DSIF recovery from an analytic near-tip field on a particle lattice.
Outcome dsif_sanity() {
  const double E = 70e9, nu = 0.3, K_I = 1e6, dx = 1e-3;
  const double mu = E / (2 * (1 + nu)), kappa = (3 - nu) / (1 + nu);
  SimulationState s;
  GridSpec g;
  g.origin = Vec2(-40 * dx, -30 * dx);
  g.width = 60 * dx;
  g.height = 60 * dx;
  g.nx = g.ny = 60;
  s.geometry.segments.push_back({Vec2(g.origin.x(), 0.0), Vec2(0.0, 0.0)});
  s.particles = generate_grid(g, s.geometry);
  s.initialize_fields();
  for (std::size_t j = 0; j < s.particles.size(); ++j) {
    const Vec2& x = s.particles.position[j];
    const double r = x.norm(), th = std::atan2(x.y(), x.x());
    const double amp = K_I / (2 * mu) * std::sqrt(r / (2 * kPi)) * (kappa - std::cos(th));
    s.kin.u[j] = Vec2(amp * std::cos(th / 2), amp * std::sin(th / 2));
  }
  const StrohData stroh = stroh_matrices(build_stiffness({1.005 * E, E, mu, nu}));
  double lo = 1e300, hi = -1e300, at3 = 0.0, worst_II = 0.0;
  std::string detail;
  for (int k : {2, 3, 4}) {
    const double rbar = k * dx;
    const ModeFactors f = dsif(crack_opening(s, Vec2::Zero(), Vec2::UnitX(), rbar), stroh, rbar);
    lo = std::min(lo, f.K_I);
    hi = std::max(hi, f.K_I);
    if (k == 3) at3 = f.K_I;
    worst_II = std::max(worst_II, std::abs(f.K_II));
    detail += fmt("rbar=%ddx: K_I err %+.3f%% ", k, 100 * (f.K_I / K_I - 1));
  }
  const bool pass = std::abs(at3 / K_I - 1) <= 0.01 && worst_II <= 0.01 * K_I && (hi - lo) <= 0.1 * K_I;
  return {pass, detail + fmt("|K_II|/K_I=%.1e spread=%.2f%% (tol 1%% at default 3dx, spread 10%%)",
                             worst_II / K_I, 100 * (hi - lo) / K_I)};
}

// Transverse in-plane modulus of an orthotropic stiffness at fibre angle theta.
double rotated_c22(const MaterialConfig& m) {
  double c11, c12, c22, c66;
  if (m.from_constants) {
    const auto& e = m.constants;
    const double nu21 = e.nu12 * e.E2 / e.E1, d = 1 - e.nu12 * nu21;
    c11 = e.E1 / d;
    c22 = e.E2 / d;
    c12 = e.nu12 * e.E2 / d;
    c66 = e.G12;
  } else {
    c11 = m.stiffness[0];
    c12 = m.stiffness[1];
    c22 = m.stiffness[3];
    c66 = m.stiffness[5];
  }
  const double c = std::cos(m.theta), s = std::sin(m.theta);
  return s * s * s * s * c11 + c * c * c * c * c22 + 2 * s * s * c * c * (c12 + 2 * c66);
}

// 9. Time-step rule for every preset.
Outcome time_step_rule() {
  bool pass = true;
  std::string detail;
  for (const auto& name : preset_names()) {
    const ScenarioConfig c = preset(name);
    const Scenario sc = setup(c);
    double cp = 0.0;
    for (const MaterialConfig* m : c.region_materials()) {
      cp = std::max(cp, std::sqrt(rotated_c22(*m) / m->density));
    }
    const double expected = 0.01 * c.horizon() / cp;
    const double rel = std::abs(sc.state.dt - expected) / expected;
    pass = pass && rel <= 4 * std::numeric_limits<double>::epsilon();
    detail += fmt("%s dt=%.10e rel=%.1e; ", name.c_str(), sc.state.dt, rel);
  }
  return {pass, detail + "(tol 4 ulp)"};
}

// 10. Snapshots are byte-identical for 1, 4 and 8 workers.
Outcome determinism() {
  std::vector<std::vector<std::string>> files;
  for (int workers : {1, 4, 8}) {
    ScenarioConfig c = momentum_config();
    c.workers = workers;
    c.output_dir = work_dir("c10_w" + std::to_string(workers)).string();
    Scenario sc = setup(c);
    sc.total_steps = 2000;
    const RunResult r = run(sc);
    std::vector<std::string> content;
    for (const auto& p : r.snapshots) content.push_back(slurp(p));
    content.push_back(slurp(fs::path(c.output_dir) / "failures.csv"));
    files.push_back(std::move(content));
  }
  const bool pass = files[0].size() > 1 && files[0] == files[1] && files[0] == files[2];
  return {pass, fmt("%zu snapshot files plus failure log compared across 1/4/8 workers",
                    files[0].size() - 1)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"affine patch test", affine_patch},
      {"oracle equivalence", oracle_equivalence},
      {"momentum conservation", momentum},
      {"edge-crack symmetry and onset", edge_symmetry},
      {"self-convergence", self_convergence},
      {"Tsai-Hill exactness", tsai_hill_surface},
      {"crack-path anisotropy", crack_paths},
      {"DSIF extraction sanity", dsif_sanity},
      {"time-step rule", time_step_rule},
      {"determinism", determinism},
  };
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) selected.push_back(std::stoi(argv[k]));
  if (selected.empty()) {
    for (int k = 1; k <= int(criteria.size()); ++k) selected.push_back(k);
  }
  int failures = 0;
  for (int k : selected) {
    if (k < 1 || k > int(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", k);
      return 2;
    }
    const auto& [name, fn] = criteria[k - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s (%.1f s) %s\n", k, name, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
