#include "anisopd/discretization.hpp"
#include "anisopd/kernel.hpp"
#include "anisopd/material.hpp"

#include "../support/bridge.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace anisopd;

namespace {

struct Lattice {
  ParticleSet particles;
  BondSet bonds;
  std::vector<MaterialRecord> materials;
};

Lattice lattice(int n, double spacing, double factor, double theta = 0.0) {
  GridSpec g;
  g.width = g.height = n * spacing;
  g.nx = g.ny = n;
  Lattice l;
  l.particles = generate_grid(g, {});
  l.bonds = build_bonds(l.particles, factor * spacing, {});
  MaterialRecord m;
  m.stiffness = rotate_stiffness(build_stiffness({144.8e9, 11.7e9, 9.66e9, 0.21}), theta);
  m.density = 2710.0;
  m.strength = {1670e6, 60e6, 70e6};
  l.materials = {m};
  return l;
}

double strain_energy(const Lattice& l, std::span<const Vec2> u) {
  TensorState t;
  compute_tensors(l.particles, l.bonds, l.materials, u, t, 1);
  double e = 0.0;
  for (std::size_t j = 0; j < l.particles.size(); ++j) {
    e += 0.5 * t.strain[j].dot(t.stress[j]) * l.particles.volume[j];
  }
  return e;
}

}  // namespace

TEST(Influence, TriangularProfile) {
  EXPECT_DOUBLE_EQ(influence(0.0, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(influence(1.0, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(influence(2.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(influence(2.0 + 1e-12, 2.0), 0.0);
}

TEST(ShapeTensor, InteriorLatticeGolden) {
  const Lattice l = lattice(9, 1.0, 2.0);
  const std::size_t centre = 4 * 9 + 4;
  const ShapeTensor s = shape_tensor(centre, l.bonds);
  ASSERT_FALSE(s.singular);
  const double mbar = 2.1715728752538097;
  EXPECT_NEAR(s.B(0, 0), 1.0 / mbar, 1e-15);
  EXPECT_NEAR(s.B(1, 1), 1.0 / mbar, 1e-15);
  EXPECT_NEAR(s.B(0, 1), 0.0, 1e-15);
}

TEST(ShapeTensor, CollinearNeighbourhoodIsSingular) {
  ParticleSet p;
  for (int k = 0; k < 3; ++k) {
    p.position.emplace_back(k * 0.5, 0.0);
    p.volume.push_back(1.0);
    p.region.push_back(0);
  }
  const BondSet b = build_bonds(p, 1.0, {});
  EXPECT_TRUE(shape_tensor(1, b).singular);
  EXPECT_EQ(shape_tensor(1, b).B, Mat2::Identity());
}

TEST(DeformationGradient, ReproducesAffineField) {
  const Lattice l = lattice(12, 1e-3, 3.0);
  Mat2 G;
  G << 3e-4, -2e-4, 5e-4, -1e-4;
  std::vector<Vec2> u;
  for (const auto& x : l.particles.position) u.push_back(G * x);
  // Every particle with a full rank moment sees the affine field exactly.
  for (std::size_t j = 0; j < l.particles.size(); ++j) {
    const ShapeTensor s = shape_tensor(j, l.bonds);
    ASSERT_FALSE(s.singular);
    const Mat2 F = deformation_gradient(j, l.bonds, u, s.B);
    EXPECT_LT((F - Mat2::Identity() - G).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(SmallStrain, EngineeringShear) {
  Mat2 F;
  F << 1.001, 0.002, 0.003, 0.999;
  const Voigt e = small_strain(F);
  EXPECT_NEAR(e(0), 1e-3, 1e-15);
  EXPECT_NEAR(e(1), -1e-3, 1e-15);
  EXPECT_NEAR(e(2), 5e-3, 1e-15);
}

TEST(CauchyStress, RotatedGraphiteEpoxyGolden) {
  MaterialRecord m;
  m.stiffness = rotate_stiffness(build_stiffness({144.8e9, 11.7e9, 9.66e9, 0.21}),
                                 std::numbers::pi / 6);
  const Voigt s = cauchy_stress(m, Voigt(1e-3, 0.0, 0.0));
  EXPECT_NEAR(s(0), 90644805.92446719, 1e-12 * 9.1e7);
  EXPECT_NEAR(s(1), 23744801.851251308, 1e-12 * 9.1e7);
  EXPECT_NEAR(s(2), 41205492.239572, 1e-12 * 9.1e7);
  EXPECT_EQ(stress_matrix(Voigt(1, 2, 3)), (Mat2() << 1, 3, 3, 2).finished());
}

TEST(Forces, RigidTranslationIsForceFree) {
  const Lattice l = lattice(10, 1e-3, 3.0, 0.4);
  std::vector<Vec2> u(l.particles.size(), Vec2(2e-5, -7e-6));
  TensorState t;
  std::vector<Vec2> f(u.size());
  compute_tensors(l.particles, l.bonds, l.materials, u, t, 1);
  compute_forces(l.bonds, t, f, 1);
  for (const auto& v : f) EXPECT_EQ(v, Vec2::Zero());
}

TEST(Forces, MatchNaiveOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const naive::System s = naive::random_system(rng);
    const naive::Result ref = naive::evaluate(s);
    const naive::Optimized opt = naive::run_optimized(s);
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      for (std::size_t m = 0; m < s.x.size(); ++m) {
        const std::size_t k = opt.bonds.find(j, m);
        if (ref.bonded[j][m] < 0) {
          EXPECT_EQ(k, opt.bonds.bond_count());
        } else {
          ASSERT_LT(k, opt.bonds.bond_count());
          EXPECT_EQ(int(opt.bonds.active[k]), ref.bonded[j][m]);
        }
      }
      EXPECT_EQ(int(opt.tensors.singular[j]), ref.singular[j]);
      EXPECT_LT((opt.tensors.shape[j] - ref.B[j]).norm(), 1e-12 * ref.B[j].norm());
      EXPECT_LT((opt.tensors.stress[j] - ref.stress[j]).norm(),
                1e-12 * std::max(1.0, ref.stress[j].norm()) + 1e-9);
    }
    EXPECT_LT(naive::force_mismatch(ref, opt), 1e-12) << "trial " << trial;
  }
}

TEST(Forces, ConserveLinearMomentum) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const naive::System s = naive::random_system(rng);
    const naive::Optimized opt = naive::run_optimized(s);
    Vec2 total = Vec2::Zero();
    double scale = 0.0;
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      total += opt.force[j] * s.volume[j];
      scale += opt.force[j].norm() * s.volume[j];
    }
    EXPECT_LE(total.norm(), 1e-13 * scale + 1e-300);
  }
}

TEST(Forces, AreNegativeEnergyGradient) {
  // L_j V_j = -dE/du_j with E = sum(1/2 eps . C eps V); central differences.
  const Lattice l = lattice(7, 1e-3, 2.5, 0.7);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> r(-1e-6, 1e-6);
  std::vector<Vec2> u(l.particles.size());
  for (auto& v : u) v = Vec2(r(rng), r(rng));
  TensorState t;
  std::vector<Vec2> f(u.size());
  compute_tensors(l.particles, l.bonds, l.materials, u, t, 1);
  compute_forces(l.bonds, t, f, 1);
  const double h = 1e-9;
  for (std::size_t j : {0ul, 10ul, 24ul, 30ul, 48ul}) {
    for (int c = 0; c < 2; ++c) {
      auto up = u, dn = u;
      up[j](c) += h;
      dn[j](c) -= h;
      const double grad = (strain_energy(l, up) - strain_energy(l, dn)) / (2 * h);
      const double fv = f[j](c) * l.particles.volume[j];
      EXPECT_NEAR(fv, -grad, 1e-6 * std::abs(grad) + 1e-3) << "particle " << j << " comp " << c;
    }
  }
}

TEST(Forces, IndependentOfWorkerCount) {
  std::mt19937_64 rng(12);
  const naive::System s = naive::random_system(rng);
  const naive::Optimized a = naive::run_optimized(s, 1);
  const naive::Optimized b = naive::run_optimized(s, 4);
  for (std::size_t j = 0; j < s.x.size(); ++j) EXPECT_EQ(a.force[j], b.force[j]);
}

TEST(Forces, SingularParticlesCarryNoForce) {
  ParticleSet p;
  for (int k = 0; k < 3; ++k) {
    p.position.emplace_back(k * 0.5, 0.0);
    p.volume.push_back(1.0);
    p.region.push_back(0);
  }
  const BondSet b = build_bonds(p, 1.0, {});
  MaterialRecord m;
  m.stiffness = Mat3::Identity();
  const std::vector<MaterialRecord> mats{m};
  std::vector<Vec2> u{Vec2(0, 0), Vec2(0.1, 0), Vec2(0.3, 0)};
  TensorState t;
  std::vector<Vec2> f(3);
  compute_tensors(p, b, mats, u, t, 1);
  compute_forces(b, t, f, 1);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_TRUE(t.singular[j]);
    EXPECT_EQ(f[j], Vec2::Zero());
  }
}
