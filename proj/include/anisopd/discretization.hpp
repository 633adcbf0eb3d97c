#pragma once

#include "anisopd/types.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace anisopd {

struct Segment {
  Vec2 a;
  Vec2 b;
};

struct Circle {
  Vec2 centre;
  double radius = 0.0;
};

struct Inclusion {
  Circle shape;
  RegionId region = 0;
};

/// Pre-cracks, voids and inclusions of a scenario.
struct CrackGeometry {
  std::vector<Segment> segments;
  std::vector<Circle> holes;
  std::vector<Inclusion> inclusions;
};

/// Uniform lattice description; particles sit at cell centres.
struct GridSpec {
  Vec2 origin = Vec2::Zero();  ///< lower-left corner [m]
  double width = 0.0;          ///< [m]
  double height = 0.0;         ///< [m]
  int nx = 0;
  int ny = 0;
  double thickness = 1.0;  ///< [m], volumes are dx*dy*thickness

  double dx() const { return width / nx; }
  double dy() const { return height / ny; }
};

/// Reference configuration, structure-of-arrays.
struct ParticleSet {
  std::vector<Vec2> position;
  std::vector<double> volume;
  std::vector<RegionId> region;
  double dx = 0.0;
  double dy = 0.0;

  std::size_t size() const { return position.size(); }
};

/// Compressed-row bond lists. Bonds of particle j occupy [offset[j], offset[j+1]),
/// sorted by neighbour index. Every bond (j, n) has its mirror (n, j) at reverse[b].
struct BondSet {
  double horizon = 0.0;
  std::vector<std::size_t> offset;
  std::vector<std::uint32_t> neighbor;
  std::vector<Vec2> xi;  ///< x_n - x_j
  std::vector<double> weight;
  std::vector<double> neighbor_volume;
  std::vector<std::uint8_t> active;  ///< mu
  std::vector<std::uint8_t> precut;  ///< broken by a pre-crack at setup
  std::vector<std::size_t> reverse;

  std::size_t particle_count() const { return offset.empty() ? 0 : offset.size() - 1; }
  std::size_t bond_count() const { return neighbor.size(); }
  std::size_t begin(std::size_t j) const { return offset[j]; }
  std::size_t end(std::size_t j) const { return offset[j + 1]; }

  /// Sets mu = 0 on bond b and on its mirror.
  void break_bond(std::size_t b) {
    active[b] = 0;
    active[reverse[b]] = 0;
  }
  /// Index of bond (j, n), or bond_count() when absent.
  std::size_t find(std::size_t j, std::size_t n) const;
  std::size_t active_count() const;
};

/// Particles at cell centres of `grid`; centres strictly inside a hole are dropped and
/// centres strictly inside an inclusion take its region. Throws ConfigError when a
/// feature leaves the domain or the grid is degenerate.
ParticleSet generate_grid(const GridSpec& grid, const CrackGeometry& features);

/// Builds all bonds with 0 < |xi| <= delta (relative slack 1e-10 so lattice distances
/// that equal delta analytically are kept), and marks every bond whose segment
/// touches a pre-crack, or passes within 1e-9 delta of one, as broken and precut.
BondSet build_bonds(const ParticleSet& particles, double delta, const CrackGeometry& cracks);

/// Particles with fewer than two non-collinear active bonds.
std::vector<std::size_t> underconnected_particles(const ParticleSet& particles,
                                                  const BondSet& bonds);

/// Closed-segment intersection with exact orientation predicates. Endpoint contact and
/// collinear overlap count as intersecting.
bool segment_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1);

/// Sign of the orientation determinant of (a, b, c), computed exactly.
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

/// One line per particle: "j: n0 n1 ..." with broken bonds suffixed by '*'.
void write_bond_graph(std::ostream& os, const BondSet& bonds);

}  // namespace anisopd
