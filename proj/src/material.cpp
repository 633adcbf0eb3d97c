#include "anisopd/material.hpp"

#include "anisopd/errors.hpp"

#include <cmath>
#include <sstream>

namespace anisopd {

namespace {

std::string describe(const EngineeringConstants& ec) {
  std::ostringstream os;
  os << "E1=" << ec.E1 << " Pa, E2=" << ec.E2 << " Pa, G12=" << ec.G12
     << " Pa, nu12=" << ec.nu12;
  return os.str();
}

}  // namespace

StiffnessMatrix build_stiffness(const EngineeringConstants& ec) {
  if (!(ec.E1 > 0.0) || !(ec.E2 > 0.0) || !(ec.G12 > 0.0)) {
    throw ConstitutiveError("moduli must be positive (" + describe(ec) + ")");
  }
  if (!std::isfinite(ec.nu12)) {
    throw ConstitutiveError("Poisson's ratio is not finite (" + describe(ec) + ")");
  }
  // Determinant of the normal block of the compliance, scaled by E1*E2.
  const double nu21 = ec.nu12 * ec.E2 / ec.E1;
  const double denom = 1.0 - ec.nu12 * nu21;
  if (!(denom > 0.0)) {
    throw ConstitutiveError("compliance is not positive definite: 1 - nu12^2 E2/E1 = " +
                            std::to_string(denom) + " (" + describe(ec) + ")");
  }

  StiffnessMatrix C = StiffnessMatrix::Zero();
  C(0, 0) = ec.E1 / denom;
  C(1, 1) = ec.E2 / denom;
  C(0, 1) = ec.nu12 * ec.E2 / denom;
  C(1, 0) = C(0, 1);
  C(2, 2) = ec.G12;
  return C;
}

Mat3 stress_rotation_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat3 R;
  R << c * c, s * s, 2.0 * c * s,
       s * s, c * c, -2.0 * c * s,
       -c * s, c * s, c * c - s * s;
  return R;
}

Mat3 strain_rotation_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat3 R;
  R << c * c, s * s, c * s,
       s * s, c * c, -c * s,
       -2.0 * c * s, 2.0 * c * s, c * c - s * s;
  return R;
}

StiffnessMatrix rotate_stiffness(const StiffnessMatrix& C, double theta) {
  // sigma_local = Rs sigma, eps_local = Re eps, and Rs^{-1} = Re^T.
  const Mat3 Re = strain_rotation_matrix(theta);
  StiffnessMatrix out = Re.transpose() * C * Re;
  // Exact symmetry; the triple product can differ in the last bit across the diagonal.
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double avg = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = avg;
      out(j, i) = avg;
    }
  }
  return out;
}

double dilatational_wave_speed(const MaterialRecord& m) {
  return std::sqrt(m.stiffness(1, 1) / m.density);
}

void validate(const MaterialRecord& m) {
  if (!(m.density > 0.0)) throw ConstitutiveError("density must be positive");
  if (!(m.strength.longitudinal > 0.0) || !(m.strength.transverse > 0.0) ||
      !(m.strength.shear > 0.0)) {
    throw ConstitutiveError("strengths sigma_Lu, sigma_Tu, tau_LTu must be positive");
  }
  if (!m.stiffness.allFinite()) throw ConstitutiveError("stiffness has non-finite entries");
  if ((m.stiffness - m.stiffness.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * m.stiffness.cwiseAbs().maxCoeff()) {
    throw ConstitutiveError("stiffness is not symmetric");
  }
  Eigen::LLT<Mat3> llt(m.stiffness);
  if (llt.info() != Eigen::Success) {
    throw ConstitutiveError("stiffness is not positive definite");
  }
}

}  // namespace anisopd
