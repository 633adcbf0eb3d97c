#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace anisopd {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
/// Voigt 3-vector in the order (11, 22, 12). Strains carry engineering shear.
using Voigt = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using RegionId = std::uint16_t;

}  // namespace anisopd
