#pragma once

#include "anisopd/types.hpp"

namespace anisopd {

/// Lamina engineering constants in the material (fibre) frame, SI units.
struct EngineeringConstants {
  double E1 = 0.0;    ///< fibre-direction modulus [Pa]
  double E2 = 0.0;    ///< transverse modulus [Pa]
  double G12 = 0.0;   ///< in-plane shear modulus [Pa]
  double nu12 = 0.0;  ///< major Poisson's ratio

  bool operator==(const EngineeringConstants&) const = default;
};

/// Tensile strengths in the fibre frame [Pa].
struct Strengths {
  double longitudinal = 0.0;  ///< sigma_Lu
  double transverse = 0.0;    ///< sigma_Tu
  double shear = 0.0;         ///< tau_LTu

  bool operator==(const Strengths&) const = default;
};

/// Plane-stress stiffness (3x3 Voigt, engineering shear), already rotated to global axes.
using StiffnessMatrix = Mat3;

struct MaterialRecord {
  StiffnessMatrix stiffness = StiffnessMatrix::Zero();
  double theta = 0.0;    ///< fibre angle [rad], counter-clockwise from +x
  double density = 0.0;  ///< [kg/m^3]
  Strengths strength;
};

/// Inverse of the plane-stress compliance
/// [[1/E1, -nu12/E1, 0], [-nu12/E1, 1/E2, 0], [0, 0, 1/G12]].
/// Throws ConstitutiveError when the compliance is not positive definite.
StiffnessMatrix build_stiffness(const EngineeringConstants& ec);

/// Rotates a fibre-frame stiffness so that the fibre axis points at `theta` in the
/// global frame. Equivalent to the fourth-order rotation
/// C'_ijkl = Q_im Q_jn Q_ko Q_lp C_mnop with Q = [[c, -s], [s, c]], evaluated on
/// Voigt matrices as Re^T C Re with Re the engineering-strain rotation.
StiffnessMatrix rotate_stiffness(const StiffnessMatrix& C, double theta);

/// Global-to-fibre stress transformation, rows (L, T, LT).
Mat3 stress_rotation_matrix(double theta);

/// Global-to-fibre transformation for engineering-shear strain vectors.
Mat3 strain_rotation_matrix(double theta);

/// sqrt(C22 / rho) using the global (rotated) stiffness.
double dilatational_wave_speed(const MaterialRecord& m);

/// Throws ConstitutiveError unless density and strengths are positive and the
/// stiffness is symmetric positive definite.
void validate(const MaterialRecord& m);

}  // namespace anisopd
