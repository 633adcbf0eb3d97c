#pragma once

#include "anisopd/damage.hpp"
#include "anisopd/discretization.hpp"
#include "anisopd/kernel.hpp"
#include "anisopd/material.hpp"

#include <functional>
#include <vector>

namespace anisopd {

/// Everything that evolves during a run. Owned by the stepping loop.
struct SimulationState {
  ParticleSet particles;
  BondSet bonds;
  std::vector<MaterialRecord> materials;  ///< indexed by region id
  CrackGeometry geometry;
  KinematicState kin;
  TensorState tensors;
  std::vector<Vec2> force;       ///< internal force density L
  std::vector<Vec2> body_force;  ///< b [N/m^3]; empty means zero everywhere
  double time = 0.0;
  double dt = 0.0;
  long step = 0;

  /// Sizes kinematic and tensor arrays to the particle count.
  void initialize_fields();
  double density(std::size_t j) const { return materials[particles.region[j]].density; }
};

enum class DisplacementUpdate {
  Backward,  ///< u += v(t + dt) dt (semi-implicit)
  Forward,   ///< u += v(t) dt
};

struct StepOptions {
  bool damage = true;
  DisplacementUpdate update = DisplacementUpdate::Backward;
  int workers = 1;
};

/// 0.01 * delta / cp_max.
double critical_time_step(double delta, double cp_max);

/// Largest dilatational wave speed over the regions that own at least one particle.
double max_wave_speed(const SimulationState& state);

/// Advances one step: tensors, forces, acceleration, velocity, displacement, bond
/// failures, clock. Returns the failures of this step. Throws NumericalAbort with the
/// offending step and particle on a non-finite value.
std::vector<BondFailureEvent> step(SimulationState& state, const StepOptions& options);

/// v = (0, amplitude * (y - y_centre) / reference_height), x velocity zero.
/// Only valid before the first step.
void apply_initial_velocity(SimulationState& state, double amplitude, double reference_height,
                            double y_centre);

/// sum(rho v V).
Vec2 linear_momentum(const SimulationState& state);
/// sum(rho |v| V), the scale against which momentum drift is measured.
double momentum_scale(const SimulationState& state);
double kinetic_energy(const SimulationState& state);
/// sum(1/2 eps . sigma V) from the tensors of the most recent step.
double strain_energy(const SimulationState& state);

struct Progress {
  long step = 0;
  double time = 0.0;
  std::size_t broken_bonds = 0;
  double max_damage = 0.0;
};

using ProgressHook = std::function<void(const Progress&)>;

}  // namespace anisopd
