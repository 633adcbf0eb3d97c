#pragma once

#include "anisopd/discretization.hpp"
#include "anisopd/kernel.hpp"
#include "anisopd/material.hpp"

#include <span>
#include <vector>

namespace anisopd {

struct BondFailureEvent {
  std::size_t particle_j = 0;
  std::size_t particle_n = 0;
  long step = 0;
  double tsai_hill_value = 0.0;
};

/// Stress components in the fibre frame.
struct LocalStress {
  double longitudinal = 0.0;  ///< sigma_L
  double transverse = 0.0;    ///< sigma_T
  double shear = 0.0;         ///< tau_LT
};

/// Mean of the two particle stresses.
Voigt bond_stress(const Voigt& sigma_j, const Voigt& sigma_n);

LocalStress local_stresses(const Voigt& sigma_bond, double theta);

/// (sL/sLu)^2 + (sT/sTu)^2 - (sL/sLu)(sT/sLu) + (tLT/tLTu)^2. A bond fails at >= 1.
double tsai_hill_index(const LocalStress& s, const Strengths& strength);

/// Material that governs a bond between regions a and b: the region itself, or for an
/// interface the weaker one (lower transverse, then longitudinal, then shear strength).
RegionId governing_region(RegionId a, RegionId b, std::span<const MaterialRecord> materials);

/// Evaluates every active bond once with the stresses in `tensors` and breaks all
/// failed bonds simultaneously. Bonds touching a singular particle are skipped.
/// Events are ordered by (j, n) with j < n.
std::vector<BondFailureEvent> apply_failures(const ParticleSet& particles, BondSet& bonds,
                                             const TensorState& tensors,
                                             std::span<const MaterialRecord> materials,
                                             long step, int workers);

/// 1 - sum(mu V_n) / sum(V_n) over all bonds of j; 1 for a particle without bonds.
double damage_index(std::size_t j, const BondSet& bonds);

std::vector<double> damage_field(const BondSet& bonds, int workers = 1);

}  // namespace anisopd
