#pragma once

#include "anisopd/integrator.hpp"
#include "anisopd/material.hpp"
#include "anisopd/types.hpp"

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace anisopd {

/// Stroh eigen-data of a plane anisotropic material. Column alpha of A and B is the
/// pair (a_alpha, b_alpha) for root p_alpha; roots have positive imaginary part and
/// are ordered by increasing imaginary part. Columns satisfy A^T B + B^T A = I.
struct StrohData {
  Eigen::Vector2cd roots;
  Eigen::Matrix2cd A;
  Eigen::Matrix2cd B;
};

/// Tolerance below which two Stroh roots count as repeated.
inline constexpr double kStrohRootTolerance = 1e-8;

/// Solves the Stroh eigenproblem from the 4x4 fundamental elasticity matrix built with
/// Q_ik = C_i1k1, R_ik = C_i1k2, T_ik = C_i2k2. Repeated roots trigger one retry with
/// C11 scaled by 1 + 1e-6; a second failure throws DegeneracyError.
StrohData stroh_matrices(const StiffnessMatrix& C);
StrohData stroh_matrices(const MaterialRecord& m);

/// Re(i A B^{-1}), the matrix relating near-tip crack opening to (K_II, K_I).
Mat2 crack_tip_compliance(const StrohData& s);

/// Largest |a_a^T b_b + b_a^T a_b - delta_ab| over the four index pairs.
double stroh_orthonormality_residual(const StrohData& s);

/// Crack opening u(upper) - u(lower) at tip - rbar * direction, in global axes. Each
/// face value is interpolated linearly along the nearest particle row strictly on
/// that side of the crack line. Throws MeasurementError when the point is not on a
/// pre-crack or no bracketing particles exist.
Vec2 crack_opening(const SimulationState& state, const Vec2& tip, const Vec2& direction,
                   double rbar);

struct ModeFactors {
  double K_II = 0.0;
  double K_I = 0.0;
};

/// [K_II, K_I]^T = sqrt(pi / (8 rbar)) Re(i A B^-1)^-1 [du1, du2]^T.
ModeFactors dsif(const Vec2& opening, const StrohData& s, double rbar);

struct DsifSample {
  double time = 0.0;
  double K_I = 0.0;
  double K_II = 0.0;
};

enum class Mode { I, II };

struct L2Error {
  double value = 0.0;
  bool defined = false;  ///< false when the reference has zero norm
};

/// Relative L2 distance of `test` from `reference` for one mode. `test` is linearly
/// interpolated onto the reference times; reference samples outside the test time
/// range are skipped.
L2Error l2_error(std::span<const DsifSample> test, std::span<const DsifSample> reference,
                 Mode mode);

struct CrackBranch {
  std::vector<std::size_t> members;
  std::vector<Vec2> polyline;
  Vec2 centroid = Vec2::Zero();
  double angle_deg = 0.0;  ///< principal direction in [0, 180)
  double extent_along = 0.0;
  double extent_across = 0.0;
};

struct CrackPath {
  std::vector<CrackBranch> branches;  ///< largest first
  std::optional<double> dominant_angle_deg;
};

/// Clusters particles with damage >= threshold (8-neighbour lattice connectivity),
/// fits a principal direction per cluster and returns ordered polylines. Clusters
/// smaller than `min_cluster` particles are dropped.
CrackPath crack_path(std::span<const Vec2> positions, std::span<const double> damage,
                     double spacing, double threshold = 0.35, std::size_t min_cluster = 3);

/// Smallest angle between two undirected directions, in degrees within [0, 90].
double axial_angle_difference(double a_deg, double b_deg);

}  // namespace anisopd
