#include "anisopd/integrator.hpp"

#include "anisopd/errors.hpp"
#include "anisopd/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace anisopd {

void SimulationState::initialize_fields() {
  const std::size_t n = particles.size();
  kin.resize(n);
  tensors.resize(n);
  force.assign(n, Vec2::Zero());
}

double critical_time_step(double delta, double cp_max) { return 0.01 * delta / cp_max; }

double max_wave_speed(const SimulationState& state) {
  std::set<RegionId> used(state.particles.region.begin(), state.particles.region.end());
  double cp = 0.0;
  for (const RegionId r : used) cp = std::max(cp, dilatational_wave_speed(state.materials[r]));
  return cp;
}

std::vector<BondFailureEvent> step(SimulationState& state, const StepOptions& options) {
  const std::size_t n = state.particles.size();
  compute_tensors(state.particles, state.bonds, state.materials, state.kin.u, state.tensors,
                  options.workers);
  try {
    compute_forces(state.bonds, state.tensors, state.force, options.workers);
  } catch (const NumericalAbort& e) {
    throw NumericalAbort(state.step, e.particle(), "non-finite force density");
  }

  const double dt = state.dt;
  const bool has_body = !state.body_force.empty();
  const bool backward = options.update == DisplacementUpdate::Backward;
  std::vector<std::uint8_t> bad(n, 0);
  parallel_for(n, options.workers, [&](std::size_t j) {
    Vec2 load = state.force[j];
    if (has_body) load += state.body_force[j];
    const Vec2 a = load / state.density(j);
    const Vec2 v_old = state.kin.v[j];
    const Vec2 v_new = v_old + a * dt;
    state.kin.a[j] = a;
    state.kin.v[j] = v_new;
    state.kin.u[j] += (backward ? v_new : v_old) * dt;
    if (!state.kin.u[j].allFinite() || !v_new.allFinite()) bad[j] = 1;
  });
  if (const auto it = std::find(bad.begin(), bad.end(), 1); it != bad.end()) {
    throw NumericalAbort(state.step, static_cast<std::size_t>(it - bad.begin()),
                         "non-finite kinematics");
  }

  std::vector<BondFailureEvent> events;
  if (options.damage) {
    events = apply_failures(state.particles, state.bonds, state.tensors, state.materials,
                            state.step, options.workers);
  }
  ++state.step;
  state.time = static_cast<double>(state.step) * dt;
  return events;
}

void apply_initial_velocity(SimulationState& state, double amplitude, double reference_height,
                            double y_centre) {
  if (state.step != 0) throw UsageError("initial velocity can only be applied at step 0");
  if (state.kin.v.size() != state.particles.size()) state.initialize_fields();
  for (std::size_t j = 0; j < state.particles.size(); ++j) {
    const double y = state.particles.position[j].y() - y_centre;
    state.kin.v[j] = Vec2(0.0, amplitude * y / reference_height);
  }
}

Vec2 linear_momentum(const SimulationState& state) {
  Vec2 p = Vec2::Zero();
  for (std::size_t j = 0; j < state.particles.size(); ++j) {
    p += state.density(j) * state.particles.volume[j] * state.kin.v[j];
  }
  return p;
}

double momentum_scale(const SimulationState& state) {
  double s = 0.0;
  for (std::size_t j = 0; j < state.particles.size(); ++j) {
    s += state.density(j) * state.particles.volume[j] * state.kin.v[j].norm();
  }
  return s;
}

double kinetic_energy(const SimulationState& state) {
  double e = 0.0;
  for (std::size_t j = 0; j < state.particles.size(); ++j) {
    e += 0.5 * state.density(j) * state.particles.volume[j] * state.kin.v[j].squaredNorm();
  }
  return e;
}

double strain_energy(const SimulationState& state) {
  double e = 0.0;
  for (std::size_t j = 0; j < state.particles.size(); ++j) {
    e += 0.5 * state.tensors.strain[j].dot(state.tensors.stress[j]) * state.particles.volume[j];
  }
  return e;
}

}  // namespace anisopd
