#include "anisopd/damage.hpp"

#include "anisopd/parallel.hpp"

#include <tuple>

namespace anisopd {

Voigt bond_stress(const Voigt& sigma_j, const Voigt& sigma_n) { return 0.5 * (sigma_j + sigma_n); }

LocalStress local_stresses(const Voigt& sigma_bond, double theta) {
  const Voigt local = stress_rotation_matrix(theta) * sigma_bond;
  return {local(0), local(1), local(2)};
}

double tsai_hill_index(const LocalStress& s, const Strengths& strength) {
  const double l = s.longitudinal / strength.longitudinal;
  const double t = s.transverse / strength.transverse;
  const double cross = s.transverse / strength.longitudinal;
  const double sh = s.shear / strength.shear;
  return l * l + t * t - l * cross + sh * sh;
}

RegionId governing_region(RegionId a, RegionId b, std::span<const MaterialRecord> materials) {
  if (a == b) return a;
  const auto key = [&](RegionId r) {
    const Strengths& s = materials[r].strength;
    return std::make_tuple(s.transverse, s.longitudinal, s.shear, r);
  };
  return key(a) <= key(b) ? a : b;
}

std::vector<BondFailureEvent> apply_failures(const ParticleSet& particles, BondSet& bonds,
                                             const TensorState& tensors,
                                             std::span<const MaterialRecord> materials,
                                             long step, int workers) {
  const std::size_t n = particles.size();
  std::vector<double> value(bonds.bond_count(), 0.0);
  std::vector<std::uint8_t> failed(bonds.bond_count(), 0);
  std::vector<Mat3> rotation;
  rotation.reserve(materials.size());
  for (const auto& m : materials) rotation.push_back(stress_rotation_matrix(m.theta));

  // Only the (j < n) copy of each bond is evaluated; it owns its slot.
  parallel_for(n, workers, [&](std::size_t j) {
    if (tensors.singular[j]) return;
    for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
      const std::size_t m = bonds.neighbor[b];
      if (m < j || !bonds.active[b] || tensors.singular[m]) continue;
      const RegionId r = governing_region(particles.region[j], particles.region[m], materials);
      const MaterialRecord& mat = materials[r];
      const Voigt local = rotation[r] * bond_stress(tensors.stress[j], tensors.stress[m]);
      const double index = tsai_hill_index({local(0), local(1), local(2)}, mat.strength);
      if (index >= 1.0) {
        failed[b] = 1;
        value[b] = index;
      }
    }
  });

  std::vector<BondFailureEvent> events;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
      if (!failed[b]) continue;
      bonds.break_bond(b);
      events.push_back({j, bonds.neighbor[b], step, value[b]});
    }
  }
  return events;
}

double damage_index(std::size_t j, const BondSet& bonds) {
  double total = 0.0;
  double intact = 0.0;
  for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
    total += bonds.neighbor_volume[b];
    if (bonds.active[b]) intact += bonds.neighbor_volume[b];
  }
  if (total <= 0.0) return 1.0;
  return 1.0 - intact / total;
}

std::vector<double> damage_field(const BondSet& bonds, int workers) {
  std::vector<double> phi(bonds.particle_count());
  parallel_for(phi.size(), workers, [&](std::size_t j) { phi[j] = damage_index(j, bonds); });
  return phi;
}

}  // namespace anisopd
