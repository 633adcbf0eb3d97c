// Command-line driver: run scenarios, presets and post-processing.

#include "anisopd/errors.hpp"
#include "anisopd/fracture.hpp"
#include "anisopd/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace anisopd;

struct Common {
  int workers = 0;
  std::string output_dir;
  long snapshot_every = -1;
  long seed = -1;
  std::vector<std::string> overrides;

  std::vector<Override> collect() const {
    std::vector<Override> out;
    for (const auto& o : overrides) out.push_back(parse_override(o));
    if (workers > 0) out.emplace_back("workers", std::to_string(workers));
    if (!output_dir.empty()) out.emplace_back("output_dir", output_dir);
    if (snapshot_every >= 0) out.emplace_back("snapshot_every", std::to_string(snapshot_every));
    if (seed >= 0) out.emplace_back("seed", std::to_string(seed));
    return out;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void execute(const ScenarioConfig& cfg) {
  RunOptions opts;
  opts.log = &std::cerr;
  long next_report = 0;
  opts.progress = [&](const Progress& p) {
    if (p.step < next_report) return;
    std::fprintf(stderr, "step %ld  t=%.4e s  broken=%zu  max_phi=%.3f\n", p.step, p.time,
                 p.broken_bonds, p.max_damage);
    next_report = p.step + 1000;
  };
  const RunResult r = run(cfg, opts);
  std::printf("%ld steps in %.2f s, output in %s\n", r.steps, r.wall_seconds, cfg.output_dir.c_str());
}

int compare(const std::string& a, const std::string& b) {
  const auto test = read_dsif_series(a);
  const auto ref = read_dsif_series(b);
  for (const Mode m : {Mode::I, Mode::II}) {
    const L2Error e = l2_error(test, ref, m);
    const char* name = m == Mode::I ? "K_I" : "K_II";
    if (e.defined) std::printf("%s %.6e\n", name, e.value);
    else std::printf("%s undefined (zero reference)\n", name);
  }
  return 0;
}

int paths(const std::string& file, double threshold, const std::string& baseline,
          std::size_t min_cluster) {
  const FieldSnapshot s = read_snapshot(file);
  std::vector<double> phi = s.damage;
  if (!baseline.empty()) {
    const FieldSnapshot b = read_snapshot(baseline);
    if (b.damage.size() != phi.size()) throw ConfigError("baseline", 0, "particle counts differ");
    for (std::size_t j = 0; j < phi.size(); ++j) phi[j] -= b.damage[j];
  }
  const CrackPath path = crack_path(s.position, phi, std::max(s.dx, s.dy), threshold, min_cluster);
  if (path.branches.empty()) {
    std::printf("no damaged particles above threshold %.3f\n", threshold);
    return 0;
  }
  std::printf("dominant_angle_deg %.3f\nbranches %zu\n", *path.dominant_angle_deg,
              path.branches.size());
  for (std::size_t k = 0; k < path.branches.size(); ++k) {
    const auto& br = path.branches[k];
    std::printf("branch %zu particles %zu angle_deg %.3f centroid %.6e %.6e extent %.6e %.6e\n", k,
                br.members.size(), br.angle_deg, br.centroid.x(), br.centroid.y(),
                br.extent_along, br.extent_across);
    for (const auto& p : br.polyline) std::printf("  %.6e %.6e\n", p.x(), p.y());
  }
  return 0;
}

int convergence(const ScenarioConfig& base, const std::vector<int>& grids,
                const std::vector<int>& factors, const std::string& reference) {
  std::optional<std::vector<DsifSample>> ref;
  if (!reference.empty()) ref = read_dsif_series(reference);
  const auto rows = convergence_study(base, grids, factors, ref, &std::cerr);
  std::filesystem::create_directories(base.output_dir);
  std::printf("grid n error_KI error_KII\n");
  for (const auto& r : rows) {
    const auto show = [](const L2Error& e) {
      char buf[32];
      if (e.defined) std::snprintf(buf, sizeof buf, "%.4f", e.value);
      else std::snprintf(buf, sizeof buf, "undefined");
      return std::string(buf);
    };
    std::printf("%d %d %s %s\n", r.cells, r.horizon_factor, show(r.mode_I).c_str(),
                show(r.mode_II).c_str());
    write_dsif_series(r.series, std::filesystem::path(base.output_dir) /
                                    ("dsif_" + std::to_string(r.cells) + "_n" +
                                     std::to_string(r.horizon_factor) + ".csv"));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic correspondence peridynamics solver"};
  app.require_subcommand(1);
  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--workers", common.workers, "parallel workers");
    sub->add_option("--output-dir", common.output_dir, "output directory");
    sub->add_option("--snapshot-every", common.snapshot_every, "snapshot interval in steps");
    sub->add_option("--seed", common.seed, "reserved; no stochastic input is used");
    sub->add_option("--override", common.overrides, "key=value replacing a config entry");
  };

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run a scenario config file");
  run_cmd->add_option("config", config_path)->required();
  add_common(run_cmd);

  std::string preset_name;
  bool print_only = false;
  auto* preset_cmd = app.add_subcommand("preset", "run a shipped preset");
  preset_cmd->add_option("name", preset_name, "edge_crack, centred_crack or inclusion_hole")->required();
  preset_cmd->add_flag("--print", print_only, "print the effective config and exit");
  add_common(preset_cmd);

  std::string series_a, series_b;
  auto* cmp_cmd = app.add_subcommand("dsif-compare", "relative L2 error of series A against B");
  cmp_cmd->add_option("seriesA", series_a)->required();
  cmp_cmd->add_option("seriesB", series_b)->required();

  std::string snapshot_path, baseline_path;
  double threshold = 0.35;
  std::size_t min_cluster = 3;
  auto* paths_cmd = app.add_subcommand("paths", "crack paths from a damage snapshot");
  paths_cmd->add_option("snapshot", snapshot_path)->required();
  paths_cmd->add_option("--threshold", threshold, "damage threshold")->check(CLI::Range(0.0, 1.0));
  paths_cmd->add_option("--baseline", baseline_path, "snapshot whose damage is subtracted");
  paths_cmd->add_option("--min-cluster", min_cluster, "smallest cluster kept");

  std::string conv_preset = "edge_crack", reference_path;
  std::vector<int> grids{200, 300, 400};
  std::vector<int> factors{1, 2, 3, 4, 5};
  auto* conv_cmd = app.add_subcommand("convergence", "grid and horizon convergence table");
  conv_cmd->add_option("--preset", conv_preset);
  conv_cmd->add_option("--grids", grids)->delimiter(',');
  conv_cmd->add_option("--factors", factors)->delimiter(',');
  conv_cmd->add_option("--reference", reference_path, "external DSIF series used as reference");
  add_common(conv_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) {
      execute(parse_config(read_file(config_path), common.collect()));
    } else if (*preset_cmd) {
      const ScenarioConfig cfg = preset(preset_name, common.collect());
      if (print_only) std::cout << format_config(cfg);
      else execute(cfg);
    } else if (*cmp_cmd) {
      return compare(series_a, series_b);
    } else if (*paths_cmd) {
      return paths(snapshot_path, threshold, baseline_path, min_cluster);
    } else if (*conv_cmd) {
      return convergence(preset(conv_preset, common.collect()), grids, factors, reference_path);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
