#pragma once

#include "anisopd/config.hpp"
#include "anisopd/fracture.hpp"
#include "anisopd/integrator.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace anisopd {

/// DSIF sampling set up for a run: fixed initial tip, Stroh data of the tip material.
struct DsifProbe {
  Vec2 tip = Vec2::Zero();
  Vec2 direction = Vec2::UnitX();
  double rbar = 0.0;
  long every = 10;
  StrohData stroh;
};

/// A configured simulation ready to step.
struct Scenario {
  ScenarioConfig config;
  SimulationState state;
  long total_steps = 0;
  std::optional<DsifProbe> dsif;
};

/// Builds particles, bonds, materials, time step and the initial velocity field.
/// Under-connected particles are reported through `warn` when given.
Scenario setup(const ScenarioConfig& config,
               const std::function<void(const std::string&)>& warn = {});

struct RunOptions {
  bool write_files = true;
  ProgressHook progress;                                  ///< called after each step
  std::function<void(const SimulationState&)> observer;  ///< called at step 0 and after each step
  std::ostream* log = nullptr;                            ///< warnings and summary text
};

struct RunResult {
  long steps = 0;
  double wall_seconds = 0.0;
  std::size_t broken_bonds = 0;  ///< bonds failed during the run, pre-cracks excluded
  double max_damage = 0.0;
  std::vector<DsifSample> dsif;
  std::vector<std::filesystem::path> snapshots;
};

/// Steps the scenario to its final time and writes the effective config, snapshots,
/// DSIF series, failure log and summary into config.output_dir.
RunResult run(Scenario& scenario, const RunOptions& options = {});
RunResult run(const ScenarioConfig& config, const RunOptions& options = {});

/// Per-particle field at one instant.
struct FieldSnapshot {
  long step = 0;
  double time = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  std::vector<Vec2> position;
  std::vector<Vec2> displacement;
  std::vector<double> damage;
  std::vector<RegionId> region;
};

FieldSnapshot capture(const SimulationState& state, int workers = 1);

/// Columns x,y,ux,uy,phi,region with %.9e values; two leading '#' lines carry the
/// step, time and lattice spacing.
void write_snapshot(const FieldSnapshot& s, std::ostream& os);
void write_snapshot(const FieldSnapshot& s, const std::filesystem::path& path);
FieldSnapshot read_snapshot(const std::filesystem::path& path);

/// Header "time_s,KI_Pa_sqrt_m,KII_Pa_sqrt_m".
void write_dsif_series(std::span<const DsifSample> series, std::ostream& os);
void write_dsif_series(std::span<const DsifSample> series, const std::filesystem::path& path);
std::vector<DsifSample> read_dsif_series(const std::filesystem::path& path);

/// DSIF at the probe from the current displacement field.
DsifSample sample_dsif(const SimulationState& state, const DsifProbe& probe);

/// One row of a convergence table.
struct ConvergenceEntry {
  int cells = 0;
  int horizon_factor = 0;
  L2Error mode_I;
  L2Error mode_II;
  std::vector<DsifSample> series;
};

/// Runs the base config without damage on every (cells, n) pair and measures each
/// DSIF series against `reference`, or against the finest grid with the same n when
/// no reference is given.
std::vector<ConvergenceEntry> convergence_study(
    const ScenarioConfig& base, const std::vector<int>& cells, const std::vector<int>& factors,
    const std::optional<std::vector<DsifSample>>& reference = std::nullopt,
    std::ostream* log = nullptr);

}  // namespace anisopd
