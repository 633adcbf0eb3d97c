#pragma once

#include "anisopd/discretization.hpp"
#include "anisopd/integrator.hpp"
#include "anisopd/material.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace anisopd {

/// A material as declared in a scenario: either lamina engineering constants or a
/// fibre-frame stiffness, plus orientation, density and strengths.
struct MaterialConfig {
  std::string name;
  bool from_constants = true;
  EngineeringConstants constants;
  std::array<double, 6> stiffness{};  ///< C11 C12 C13 C22 C23 C33, fibre frame [Pa]
  double theta = 0.0;                 ///< [rad]
  double density = 0.0;               ///< [kg/m^3]
  Strengths strength;

  /// Builds, rotates and validates. Throws ConfigError on bad constants.
  MaterialRecord record() const;
  bool operator==(const MaterialConfig&) const = default;
};

struct SegmentConfig {
  std::string id;
  std::array<double, 4> ends{};  ///< x0 y0 x1 y1 [m]
  bool operator==(const SegmentConfig&) const = default;
};

struct CircleConfig {
  std::string id;
  std::array<double, 3> circle{};  ///< cx cy r [m]
  std::string material;            ///< inclusions only
  bool operator==(const CircleConfig&) const = default;
};

struct DsifConfig {
  std::array<double, 2> tip{};
  std::array<double, 2> direction{1.0, 0.0};
  double rbar = 0.0;  ///< [m]; 0 selects 3 * dx
  long every = 10;    ///< sampling interval in steps
  std::string material;  ///< empty selects the plate material
  bool operator==(const DsifConfig&) const = default;
};

struct ScenarioConfig {
  std::string name = "custom";
  double width = 0.0;
  double height = 0.0;  ///< full plate height 2h
  double x0 = 0.0;      ///< lower-left corner
  double y0 = 0.0;
  int nx = 0;
  int ny = 0;
  double horizon_factor = 3.0;
  std::string plate_material = "plate";
  std::vector<MaterialConfig> materials;
  std::vector<SegmentConfig> cracks;
  std::vector<CircleConfig> holes;
  std::vector<CircleConfig> inclusions;
  double velocity_amplitude = 0.0;  ///< V0 in v_y = V0 (y - y_c) / (2h)
  std::array<double, 2> body_force{};
  bool damage = true;
  DisplacementUpdate update = DisplacementUpdate::Backward;
  double total_time = 0.0;
  long snapshot_every = 0;  ///< 0 writes only the first and last step
  std::optional<DsifConfig> dsif;
  std::string output_dir = "output";
  int workers = 1;
  bool failure_log = true;
  long seed = 0;

  GridSpec grid() const;
  double spacing() const { return width / nx; }
  double horizon() const { return horizon_factor * spacing(); }
  CrackGeometry geometry() const;
  /// Material order used for region ids: the plate material first, then the rest in
  /// declaration order.
  std::vector<const MaterialConfig*> region_materials() const;
  const MaterialConfig* find_material(std::string_view name) const;

  bool operator==(const ScenarioConfig&) const = default;
};

using Override = std::pair<std::string, std::string>;

/// Parses "key = value [unit]" lines. '#' starts a comment. Each key may appear once;
/// overrides replace or add keys after parsing. Throws ConfigError with the line and
/// key of the first problem.
ScenarioConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {});

/// Splits "key=value" into an override.
Override parse_override(std::string_view text);

/// Effective configuration in SI units with round-trip precision. Parsing the output
/// yields a config equal to the input.
std::string format_config(const ScenarioConfig& config);

/// Names of the shipped presets.
std::vector<std::string> preset_names();
/// Config text of a preset. Throws ConfigError for unknown names.
std::string preset_text(std::string_view name);
ScenarioConfig preset(std::string_view name, const std::vector<Override>& overrides = {});

/// Returns a copy with nx = cells and ny chosen for square cells.
ScenarioConfig with_grid(ScenarioConfig config, int cells);

}  // namespace anisopd
