#include "anisopd/discretization.hpp"

#include "anisopd/errors.hpp"
#include "anisopd/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace anisopd {

namespace {

// Shewchuk's two-sum / two-product, used to evaluate orientation signs exactly.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  e = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Adds `b` to a nonoverlapping expansion (increasing magnitude), dropping zeros.
void grow_expansion(std::vector<double>& e, double b) {
  double q = b;
  std::size_t out = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double s, h;
    two_sum(q, e[i], s, h);
    q = s;
    if (h != 0.0) e[out++] = h;
  }
  e.resize(out);
  if (q != 0.0) e.push_back(q);
}

int orient2d_exact(const Vec2& a, const Vec2& b, const Vec2& c) {
  // (ax-cx)(by-cy) - (ay-cy)(bx-cx) expanded into six products.
  const double terms[6][2] = {{a.x(), b.y()},  {-a.x(), c.y()}, {-c.x(), b.y()},
                              {-a.y(), b.x()}, {a.y(), c.x()},  {c.y(), b.x()}};
  std::vector<double> e;
  e.reserve(24);
  for (const auto& t : terms) {
    double p, err;
    two_product(t[0], t[1], p, err);
    grow_expansion(e, err);
    grow_expansion(e, p);
  }
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (*it > 0.0) return 1;
    if (*it < 0.0) return -1;
  }
  return 0;
}

bool on_segment(const Vec2& p, const Vec2& q, const Vec2& r) {
  // r collinear with pq; closed bounding-box test.
  return std::min(p.x(), q.x()) <= r.x() && r.x() <= std::max(p.x(), q.x()) &&
         std::min(p.y(), q.y()) <= r.y() && r.y() <= std::max(p.y(), q.y());
}

void check_circle_inside(const GridSpec& g, const Circle& c, const char* what) {
  if (!(c.radius > 0.0)) {
    throw ConfigError(what, 0, "radius must be positive");
  }
  const Vec2 lo = g.origin;
  const Vec2 hi = g.origin + Vec2(g.width, g.height);
  if (c.centre.x() - c.radius < lo.x() || c.centre.x() + c.radius > hi.x() ||
      c.centre.y() - c.radius < lo.y() || c.centre.y() + c.radius > hi.y()) {
    throw ConfigError(what, 0, "circle overlaps the domain boundary");
  }
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * d)).norm();
}

// Exact intersection, plus contacts within `tol` so that a bond meant to pass through a
// crack end is cut regardless of how the lattice coordinates rounded.
bool cuts(const Vec2& x0, const Vec2& x1, const Segment& s, double tol) {
  if (segment_intersect(x0, x1, s.a, s.b)) return true;
  return point_segment_distance(s.a, x0, x1) <= tol || point_segment_distance(s.b, x0, x1) <= tol ||
         point_segment_distance(x0, s.a, s.b) <= tol || point_segment_distance(x1, s.a, s.b) <= tol;
}

bool strictly_inside(const Circle& c, const Vec2& p) {
  return (p - c.centre).squaredNorm() < c.radius * c.radius;
}

}  // namespace

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double left = (a.x() - c.x()) * (b.y() - c.y());
  const double right = (a.y() - c.y()) * (b.x() - c.x());
  const double det = left - right;
  const double bound = 3.3306690738754716e-16 * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient2d_exact(a, b, c);
}

bool segment_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
  const int d1 = orient2d(b0, b1, a0);
  const int d2 = orient2d(b0, b1, a1);
  const int d3 = orient2d(a0, a1, b0);
  const int d4 = orient2d(a0, a1, b1);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(b0, b1, a0)) return true;
  if (d2 == 0 && on_segment(b0, b1, a1)) return true;
  if (d3 == 0 && on_segment(a0, a1, b0)) return true;
  if (d4 == 0 && on_segment(a0, a1, b1)) return true;
  return false;
}

std::size_t BondSet::find(std::size_t j, std::size_t n) const {
  const auto first = neighbor.begin() + static_cast<std::ptrdiff_t>(offset[j]);
  const auto last = neighbor.begin() + static_cast<std::ptrdiff_t>(offset[j + 1]);
  const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(n));
  if (it == last || *it != n) return bond_count();
  return static_cast<std::size_t>(it - neighbor.begin());
}

std::size_t BondSet::active_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), 1));
}

ParticleSet generate_grid(const GridSpec& grid, const CrackGeometry& features) {
  if (grid.nx < 2 || grid.ny < 2) {
    throw ConfigError("grid", 0, "grid counts must be at least 2 in each direction");
  }
  if (!(grid.width > 0.0) || !(grid.height > 0.0) || !(grid.thickness > 0.0)) {
    throw ConfigError("domain", 0, "domain dimensions must be positive");
  }
  for (const auto& h : features.holes) check_circle_inside(grid, h, "hole");
  for (const auto& inc : features.inclusions) check_circle_inside(grid, inc.shape, "inclusion");

  ParticleSet p;
  p.dx = grid.dx();
  p.dy = grid.dy();
  const double volume = p.dx * p.dy * grid.thickness;
  const auto total = static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny);
  p.position.reserve(total);
  p.volume.reserve(total);
  p.region.reserve(total);

  // Row-major in y so that rows of constant y are contiguous.
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vec2 x(grid.origin.x() + (ix + 0.5) * p.dx, grid.origin.y() + (iy + 0.5) * p.dy);
      if (std::any_of(features.holes.begin(), features.holes.end(),
                      [&](const Circle& c) { return strictly_inside(c, x); })) {
        continue;
      }
      RegionId region = 0;
      for (const auto& inc : features.inclusions) {
        if (strictly_inside(inc.shape, x)) region = inc.region;
      }
      p.position.push_back(x);
      p.volume.push_back(volume);
      p.region.push_back(region);
    }
  }
  return p;
}

BondSet build_bonds(const ParticleSet& particles, double delta, const CrackGeometry& cracks) {
  if (!(delta > 0.0)) throw ConfigError("horizon", 0, "horizon must be positive");

  const std::size_t n = particles.size();
  BondSet bonds;
  bonds.horizon = delta;
  bonds.offset.assign(n + 1, 0);
  if (n == 0) return bonds;

  // Cell list with cell size delta.
  Vec2 lo = particles.position[0];
  Vec2 hi = lo;
  for (const auto& x : particles.position) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  const double cell = delta;
  const auto ncx = static_cast<std::size_t>(std::floor((hi.x() - lo.x()) / cell)) + 1;
  const auto ncy = static_cast<std::size_t>(std::floor((hi.y() - lo.y()) / cell)) + 1;
  auto cell_of = [&](const Vec2& x) {
    const auto cx = std::min(ncx - 1, static_cast<std::size_t>((x.x() - lo.x()) / cell));
    const auto cy = std::min(ncy - 1, static_cast<std::size_t>((x.y() - lo.y()) / cell));
    return std::pair{cx, cy};
  };
  std::vector<std::size_t> cell_start(ncx * ncy + 1, 0);
  std::vector<std::uint32_t> cell_items(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto [cx, cy] = cell_of(particles.position[j]);
    ++cell_start[cy * ncx + cx + 1];
  }
  for (std::size_t c = 0; c < ncx * ncy; ++c) cell_start[c + 1] += cell_start[c];
  {
    std::vector<std::size_t> fill(cell_start.begin(), cell_start.end() - 1);
    for (std::size_t j = 0; j < n; ++j) {
      const auto [cx, cy] = cell_of(particles.position[j]);
      cell_items[fill[cy * ncx + cx]++] = static_cast<std::uint32_t>(j);
    }
  }

  const double reach = delta * (1.0 + 1e-10);
  const double reach2 = reach * reach;
  std::vector<std::uint32_t> found;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2& xj = particles.position[j];
    const auto [cx, cy] = cell_of(xj);
    found.clear();
    for (std::size_t yy = (cy == 0 ? 0 : cy - 1); yy <= std::min(ncy - 1, cy + 1); ++yy) {
      for (std::size_t xx = (cx == 0 ? 0 : cx - 1); xx <= std::min(ncx - 1, cx + 1); ++xx) {
        const std::size_t c = yy * ncx + xx;
        for (std::size_t k = cell_start[c]; k < cell_start[c + 1]; ++k) {
          const std::uint32_t m = cell_items[k];
          if (m == j) continue;
          const Vec2 xi = particles.position[m] - xj;
          const double r2 = xi.squaredNorm();
          if (r2 > 0.0 && r2 <= reach2) found.push_back(m);
        }
      }
    }
    std::sort(found.begin(), found.end());
    for (const std::uint32_t m : found) {
      const Vec2 xi = particles.position[m] - xj;
      bonds.neighbor.push_back(m);
      bonds.xi.push_back(xi);
      bonds.weight.push_back(influence(xi.norm(), delta));
      bonds.neighbor_volume.push_back(particles.volume[m]);
    }
    bonds.offset[j + 1] = bonds.neighbor.size();
  }

  const std::size_t nb = bonds.neighbor.size();
  bonds.active.assign(nb, 1);
  bonds.precut.assign(nb, 0);
  bonds.reverse.assign(nb, nb);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
      bonds.reverse[b] = bonds.find(bonds.neighbor[b], j);
    }
  }

  for (std::size_t j = 0; j < n && !cracks.segments.empty(); ++j) {
    const Vec2& xj = particles.position[j];
    for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
      const std::size_t m = bonds.neighbor[b];
      if (m < j) continue;
      const Vec2& xm = particles.position[m];
      for (const auto& s : cracks.segments) {
        if (cuts(xj, xm, s, 1e-9 * delta)) {
          bonds.break_bond(b);
          bonds.precut[b] = 1;
          bonds.precut[bonds.reverse[b]] = 1;
          break;
        }
      }
    }
  }
  return bonds;
}

std::vector<std::size_t> underconnected_particles(const ParticleSet& particles,
                                                  const BondSet& bonds) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < particles.size(); ++j) {
    const Vec2* first = nullptr;
    bool spans = false;
    for (std::size_t b = bonds.begin(j); b < bonds.end(j) && !spans; ++b) {
      if (!bonds.active[b] || bonds.weight[b] <= 0.0) continue;
      const Vec2& xi = bonds.xi[b];
      if (first == nullptr) {
        first = &xi;
      } else {
        const double cross = first->x() * xi.y() - first->y() * xi.x();
        spans = std::abs(cross) > 1e-12 * first->norm() * xi.norm();
      }
    }
    if (!spans) out.push_back(j);
  }
  return out;
}

void write_bond_graph(std::ostream& os, const BondSet& bonds) {
  for (std::size_t j = 0; j < bonds.particle_count(); ++j) {
    os << j << ':';
    for (std::size_t b = bonds.begin(j); b < bonds.end(j); ++b) {
      os << ' ' << bonds.neighbor[b];
      if (!bonds.active[b]) os << '*';
    }
    os << '\n';
  }
}

}  // namespace anisopd
