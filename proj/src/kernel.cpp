#include "anisopd/kernel.hpp"

#include "anisopd/errors.hpp"
#include "anisopd/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace anisopd {

namespace {

struct Moments {
  double m00 = 0.0, m01 = 0.0, m11 = 0.0;
};

// Inverts a symmetric 2x2 moment matrix; false when singular or ill conditioned.
bool invert_moments(const Moments& m, Mat2& B) {
  const double trace = m.m00 + m.m11;
  if (!(trace > 0.0)) return false;
  const double half_gap = std::sqrt(0.25 * (m.m00 - m.m11) * (m.m00 - m.m11) + m.m01 * m.m01);
  const double lmax = 0.5 * trace + half_gap;
  const double det = m.m00 * m.m11 - m.m01 * m.m01;
  // lmin from det/lmax avoids cancellation in 0.5*trace - half_gap.
  const double lmin = det / lmax;
  if (!(lmin > 0.0) || lmax > kShapeConditionLimit * lmin) return false;
  B << m.m11 / det, -m.m01 / det, -m.m01 / det, m.m00 / det;
  return true;
}

}  // namespace

void TensorState::resize(std::size_t n) {
  shape.assign(n, Mat2::Identity());
  deformation.assign(n, Mat2::Identity());
  strain.assign(n, Voigt::Zero());
  stress.assign(n, Voigt::Zero());
  traction.assign(n, Mat2::Zero());
  singular.assign(n, 0);
}

double influence(double xi_norm, double delta) { return std::max(0.0, 1.0 - xi_norm / delta); }

ShapeTensor shape_tensor(std::size_t j, const BondSet& bonds) {
  Moments m;
  for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
    if (!bonds.active[b]) continue;
    const double w = bonds.weight[b] * bonds.neighbor_volume[b];
    const Vec2& xi = bonds.xi[b];
    m.m00 += w * xi.x() * xi.x();
    m.m01 += w * xi.x() * xi.y();
    m.m11 += w * xi.y() * xi.y();
  }
  ShapeTensor out;
  out.singular = !invert_moments(m, out.B);
  if (out.singular) out.B.setIdentity();
  return out;
}

Mat2 deformation_gradient(std::size_t j, const BondSet& bonds, std::span<const Vec2> u,
                          const Mat2& B) {
  Mat2 moment = Mat2::Zero();
  for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
    if (!bonds.active[b]) continue;
    const double w = bonds.weight[b] * bonds.neighbor_volume[b];
    const Vec2 du = u[bonds.neighbor[b]] - u[j];
    moment.noalias() += (w * du) * bonds.xi[b].transpose();
  }
  // Y (x) xi = xi (x) xi + du (x) xi, and the first sum times B is the identity.
  return Mat2::Identity() + moment * B;
}

Voigt small_strain(const Mat2& F) {
  return Voigt(F(0, 0) - 1.0, F(1, 1) - 1.0, F(0, 1) + F(1, 0));
}

Voigt cauchy_stress(const MaterialRecord& m, const Voigt& eps) { return m.stiffness * eps; }

Mat2 stress_matrix(const Voigt& sigma) {
  Mat2 s;
  s << sigma(0), sigma(2), sigma(2), sigma(1);
  return s;
}

Vec2 internal_force_density(std::size_t j, const BondSet& bonds, const TensorState& tensors) {
  if (tensors.singular[j]) return Vec2::Zero();
  Vec2 own = Vec2::Zero();
  Vec2 other = Vec2::Zero();
  for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
    if (!bonds.active[b]) continue;
    const std::size_t n = bonds.neighbor[b];
    if (tensors.singular[n]) continue;
    const double w = bonds.weight[b] * bonds.neighbor_volume[b];
    const Vec2 wxi = w * bonds.xi[b];
    own += wxi;
    other.noalias() += tensors.traction[n] * wxi;
  }
  return tensors.traction[j] * own + other;
}

void compute_tensors(const ParticleSet& particles, const BondSet& bonds,
                     std::span<const MaterialRecord> materials, std::span<const Vec2> u,
                     TensorState& tensors, int workers) {
  const std::size_t n = particles.size();
  if (tensors.shape.size() != n) tensors.resize(n);
  parallel_for(n, workers, [&](std::size_t j) {
    Moments m;
    Mat2 moment = Mat2::Zero();
    const Vec2 uj = u[j];
    for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
      if (!bonds.active[b]) continue;
      const double w = bonds.weight[b] * bonds.neighbor_volume[b];
      const Vec2& xi = bonds.xi[b];
      m.m00 += w * xi.x() * xi.x();
      m.m01 += w * xi.x() * xi.y();
      m.m11 += w * xi.y() * xi.y();
      const Vec2 du = w * (u[bonds.neighbor[b]] - uj);
      moment(0, 0) += du.x() * xi.x();
      moment(0, 1) += du.x() * xi.y();
      moment(1, 0) += du.y() * xi.x();
      moment(1, 1) += du.y() * xi.y();
    }
    Mat2 B;
    if (!invert_moments(m, B)) {
      tensors.singular[j] = 1;
      tensors.shape[j].setIdentity();
      tensors.deformation[j].setIdentity();
      tensors.strain[j].setZero();
      tensors.stress[j].setZero();
      tensors.traction[j].setZero();
      return;
    }
    const Mat2 H = moment * B;  // F - I
    const Voigt eps(H(0, 0), H(1, 1), H(0, 1) + H(1, 0));
    const Voigt sigma = materials[particles.region[j]].stiffness * eps;
    tensors.singular[j] = 0;
    tensors.shape[j] = B;
    tensors.deformation[j] = Mat2::Identity() + H;
    tensors.strain[j] = eps;
    tensors.stress[j] = sigma;
    tensors.traction[j] = stress_matrix(sigma) * B;
  });
}

void compute_forces(const BondSet& bonds, const TensorState& tensors, std::span<Vec2> force,
                    int workers) {
  const std::size_t n = bonds.particle_count();
  parallel_for(n, workers,
               [&](std::size_t j) { force[j] = internal_force_density(j, bonds, tensors); });
  for (std::size_t j = 0; j < n; ++j) {
    if (!force[j].allFinite()) throw NumericalAbort(-1, j, "non-finite force density");
  }
}

}  // namespace anisopd
