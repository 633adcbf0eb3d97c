#pragma once

#include "anisopd/discretization.hpp"
#include "anisopd/material.hpp"
#include "anisopd/types.hpp"

#include <span>
#include <vector>

namespace anisopd {

/// Condition number of the bond moment matrix above which a particle is singular.
inline constexpr double kShapeConditionLimit = 1e12;

/// Per-particle displacement, velocity and acceleration.
struct KinematicState {
  std::vector<Vec2> u;
  std::vector<Vec2> v;
  std::vector<Vec2> a;

  void resize(std::size_t n) {
    u.assign(n, Vec2::Zero());
    v.assign(n, Vec2::Zero());
    a.assign(n, Vec2::Zero());
  }
};

/// Per-particle tensors recomputed every step. `traction` caches sigma * B, the only
/// quantity the force pass reads from neighbours.
struct TensorState {
  std::vector<Mat2> shape;  ///< B
  std::vector<Mat2> deformation;  ///< F
  std::vector<Voigt> strain;
  std::vector<Voigt> stress;
  std::vector<Mat2> traction;
  std::vector<std::uint8_t> singular;

  void resize(std::size_t n);
};

/// 1 - |xi|/delta, clamped at 0 for |xi| marginally beyond delta.
double influence(double xi_norm, double delta);

struct ShapeTensor {
  Mat2 B = Mat2::Identity();
  bool singular = false;
};

/// Inverse of sum(mu * omega * xi (x) xi * V_n) over the bonds of j. Flags the particle
/// and returns identity when the sum is singular or worse conditioned than
/// kShapeConditionLimit.
ShapeTensor shape_tensor(std::size_t j, const BondSet& bonds);

/// [sum(mu * omega * Y (x) xi * V_n)] * B with Y the deformed bond vector.
Mat2 deformation_gradient(std::size_t j, const BondSet& bonds, std::span<const Vec2> u,
                          const Mat2& B);

/// [eps11, eps22, gamma12] of sym(F) - I, gamma12 = F12 + F21.
Voigt small_strain(const Mat2& F);

/// C * eps.
Voigt cauchy_stress(const MaterialRecord& m, const Voigt& eps);

/// Voigt stress as a symmetric 2x2 matrix.
Mat2 stress_matrix(const Voigt& sigma);

/// Force density of j: sum over active bonds to non-singular neighbours of
/// mu * omega * (sigma_j B_j + sigma_n B_n) xi V_n. Zero for singular particles.
Vec2 internal_force_density(std::size_t j, const BondSet& bonds, const TensorState& tensors);

/// Phase one: B, F, strain, stress and sigma*B for every particle. Each particle writes
/// only its own slots, so the result is independent of `workers`.
void compute_tensors(const ParticleSet& particles, const BondSet& bonds,
                     std::span<const MaterialRecord> materials, std::span<const Vec2> u,
                     TensorState& tensors, int workers);

/// Phase two: force density of every particle. Throws NumericalAbort on a non-finite
/// result (step is reported as -1; the integrator rethrows with its step).
void compute_forces(const BondSet& bonds, const TensorState& tensors, std::span<Vec2> force,
                    int workers);

}  // namespace anisopd
