#include "anisopd/fracture.hpp"

#include "anisopd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace anisopd {

namespace {

using Complex = std::complex<double>;

std::optional<StrohData> solve_stroh(const StiffnessMatrix& stiffness) {
  // Work with C / c0 so all blocks of N are O(1); a and b are rescaled at the end.
  const double c0 = stiffness.cwiseAbs().maxCoeff();
  const StiffnessMatrix C = stiffness / c0;
  Mat2 Q, R, T;
  Q << C(0, 0), C(0, 2), C(0, 2), C(2, 2);
  R << C(0, 2), C(0, 1), C(2, 2), C(1, 2);
  T << C(2, 2), C(1, 2), C(1, 2), C(1, 1);
  const Mat2 Ti = T.inverse();

  Eigen::Matrix4d N;
  N.block<2, 2>(0, 0) = -Ti * R.transpose();
  N.block<2, 2>(0, 2) = Ti;
  N.block<2, 2>(2, 0) = R * Ti * R.transpose() - Q;
  N.block<2, 2>(2, 2) = -R * Ti;

  Eigen::EigenSolver<Eigen::Matrix4d> solver(N);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const Eigen::Vector4cd values = solver.eigenvalues();
  const Eigen::Matrix4cd vectors = solver.eigenvectors();

  std::vector<int> upper;
  for (int k = 0; k < 4; ++k) {
    if (values(k).imag() > 0.0) upper.push_back(k);
  }
  if (upper.size() != 2) return std::nullopt;
  std::sort(upper.begin(), upper.end(),
            [&](int a, int b) { return values(a).imag() < values(b).imag(); });
  const Complex p0 = values(upper[0]);
  const Complex p1 = values(upper[1]);
  if (std::abs(p0 - p1) < kStrohRootTolerance * std::max(1.0, std::abs(p0))) return std::nullopt;

  StrohData s;
  for (int col = 0; col < 2; ++col) {
    const int k = upper[col];
    s.roots(col) = values(k);
    Eigen::Vector2cd a = vectors.block<2, 1>(0, k);
    Eigen::Vector2cd b = vectors.block<2, 1>(2, k);
    const Complex scale = std::sqrt(Complex(2.0) * (a.transpose() * b)(0));
    a /= scale;
    b /= scale;
    // Fix the remaining sign: reference component of a gets a positive real part.
    const Complex ref = std::abs(a(0)) > 1e-12 * a.cwiseAbs().maxCoeff() ? a(0) : a(1);
    if (ref.real() < 0.0 || (std::abs(ref.real()) < 1e-14 * std::abs(ref) && ref.imag() < 0.0)) {
      a = -a;
      b = -b;
    }
    s.A.col(col) = a / std::sqrt(c0);
    s.B.col(col) = b * std::sqrt(c0);
  }
  return s;
}

double distance_to_segment(const Vec2& p, const Segment& s) {
  const Vec2 d = s.b - s.a;
  const double len2 = d.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (p - (s.a + t * d)).norm();
}

struct FaceSample {
  std::size_t left = 0;
  std::size_t right = 0;
  double weight_right = 0.0;
};

FaceSample face_sample(const ParticleSet& p, const Vec2& point, const Vec2& along,
                       const Vec2& normal, double side) {
  const double spacing = std::max(p.dx, p.dy);
  const double tol = 1e-6 * spacing;
  double row = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Vec2 r = p.position[j] - point;
    const double t = side * r.dot(normal);
    if (t > tol && std::abs(r.dot(along)) <= 2.0 * spacing) row = std::min(row, t);
  }
  if (!std::isfinite(row)) throw MeasurementError("no particle row on the crack face");

  bool have_left = false, have_right = false;
  double s_left = 0.0, s_right = 0.0;
  FaceSample out;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Vec2 r = p.position[j] - point;
    if (std::abs(side * r.dot(normal) - row) > tol) continue;
    const double s = r.dot(along);
    if (s <= tol && (!have_left || s > s_left)) {
      have_left = true;
      s_left = s;
      out.left = j;
    }
    if (s >= -tol && (!have_right || s < s_right)) {
      have_right = true;
      s_right = s;
      out.right = j;
    }
  }
  if (!have_left || !have_right) throw MeasurementError("crack-opening point not bracketed");
  out.weight_right = s_right - s_left > tol ? (0.0 - s_left) / (s_right - s_left) : 0.0;
  return out;
}

}  // namespace

StrohData stroh_matrices(const StiffnessMatrix& C) {
  if (auto s = solve_stroh(C)) return *s;
  StiffnessMatrix perturbed = C;
  perturbed(0, 0) *= 1.0 + 1e-6;
  if (auto s = solve_stroh(perturbed)) return *s;
  throw DegeneracyError("Stroh roots are repeated; material is (near) isotropic");
}

StrohData stroh_matrices(const MaterialRecord& m) { return stroh_matrices(m.stiffness); }

Mat2 crack_tip_compliance(const StrohData& s) {
  const Eigen::Matrix2cd m = Complex(0.0, 1.0) * s.A * s.B.inverse();
  return m.real();
}

double stroh_orthonormality_residual(const StrohData& s) {
  const Eigen::Matrix2cd g = s.A.transpose() * s.B + s.B.transpose() * s.A;
  return (g - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

Vec2 crack_opening(const SimulationState& state, const Vec2& tip, const Vec2& direction,
                   double rbar) {
  if (!(rbar > 0.0)) throw MeasurementError("rbar must be positive");
  const Vec2 along = direction.normalized();
  const Vec2 normal(-along.y(), along.x());
  const Vec2 point = tip - rbar * along;
  const auto& p = state.particles;
  const double tol = 1e-6 * std::max(p.dx, p.dy);
  const bool on_crack =
      std::any_of(state.geometry.segments.begin(), state.geometry.segments.end(),
                  [&](const Segment& s) { return distance_to_segment(point, s) <= tol; });
  if (!on_crack) throw MeasurementError("rbar reaches beyond the pre-crack");

  const auto value = [&](const FaceSample& f) {
    const Vec2& ul = state.kin.u[f.left];
    const Vec2& ur = state.kin.u[f.right];
    return Vec2(ul + f.weight_right * (ur - ul));
  };
  const FaceSample upper = face_sample(p, point, along, normal, 1.0);
  const FaceSample lower = face_sample(p, point, along, normal, -1.0);
  return value(upper) - value(lower);
}

ModeFactors dsif(const Vec2& opening, const StrohData& s, double rbar) {
  const Mat2 L = crack_tip_compliance(s);
  const double det = L.determinant();
  if (!(std::abs(det) > 1e-14 * L.cwiseAbs().maxCoeff() * L.cwiseAbs().maxCoeff())) {
    throw DegeneracyError("crack-tip compliance Re(iAB^-1) is singular");
  }
  const Vec2 k = std::sqrt(std::numbers::pi / (8.0 * rbar)) * L.inverse() * opening;
  return {k(0), k(1)};
}

L2Error l2_error(std::span<const DsifSample> test, std::span<const DsifSample> reference,
                 Mode mode) {
  const auto pick = [mode](const DsifSample& s) { return mode == Mode::I ? s.K_I : s.K_II; };
  L2Error out;
  if (test.empty() || reference.empty()) return out;
  double num = 0.0;
  double den = 0.0;
  std::size_t k = 0;
  for (const auto& r : reference) {
    if (r.time < test.front().time || r.time > test.back().time) continue;
    while (k + 1 < test.size() && test[k + 1].time < r.time) ++k;
    double value = pick(test[k]);
    if (k + 1 < test.size() && test[k + 1].time > test[k].time) {
      const double w = (r.time - test[k].time) / (test[k + 1].time - test[k].time);
      value = (1.0 - w) * pick(test[k]) + w * pick(test[k + 1]);
    }
    const double diff = value - pick(r);
    num += diff * diff;
    den += pick(r) * pick(r);
  }
  if (den > 0.0) {
    out.value = std::sqrt(num) / std::sqrt(den);
    out.defined = true;
  }
  return out;
}

double axial_angle_difference(double a_deg, double b_deg) {
  double d = std::fmod(std::abs(a_deg - b_deg), 180.0);
  return d > 90.0 ? 180.0 - d : d;
}

CrackPath crack_path(std::span<const Vec2> positions, std::span<const double> damage,
                     double spacing, double threshold, std::size_t min_cluster) {
  CrackPath out;
  std::vector<std::size_t> selected;
  for (std::size_t j = 0; j < damage.size(); ++j) {
    if (damage[j] >= threshold) selected.push_back(j);
  }
  if (selected.empty()) return out;

  const auto key = [spacing](long ix, long iy) {
    return (static_cast<std::int64_t>(ix) << 32) ^ static_cast<std::int64_t>(iy & 0xffffffff);
  };
  const auto cell = [spacing](const Vec2& x) {
    return std::pair<long, long>{std::lround(std::floor(x.x() / spacing)),
                                 std::lround(std::floor(x.y() / spacing))};
  };
  std::unordered_map<std::int64_t, std::size_t> lookup;  // cell -> index into selected
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const auto [ix, iy] = cell(positions[selected[k]]);
    lookup.emplace(key(ix, iy), k);
  }

  std::vector<int> label(selected.size(), -1);
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t seed = 0; seed < selected.size(); ++seed) {
    if (label[seed] >= 0) continue;
    const int id = static_cast<int>(clusters.size());
    clusters.emplace_back();
    std::vector<std::size_t> stack{seed};
    label[seed] = id;
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      clusters[id].push_back(selected[k]);
      const auto [ix, iy] = cell(positions[selected[k]]);
      for (long dy = -1; dy <= 1; ++dy) {
        for (long dx = -1; dx <= 1; ++dx) {
          const auto it = lookup.find(key(ix + dx, iy + dy));
          if (it == lookup.end() || label[it->second] >= 0) continue;
          label[it->second] = id;
          stack.push_back(it->second);
        }
      }
    }
  }

  for (auto& members : clusters) {
    if (members.size() < min_cluster) continue;
    std::sort(members.begin(), members.end());
    CrackBranch br;
    br.members = members;
    for (const auto j : members) br.centroid += positions[j];
    br.centroid /= static_cast<double>(members.size());
    Mat2 cov = Mat2::Zero();
    for (const auto j : members) {
      const Vec2 r = positions[j] - br.centroid;
      cov += r * r.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Mat2> eig(cov);
    const Vec2 axis = eig.eigenvectors().col(1);
    const Vec2 across(-axis.y(), axis.x());
    double angle = std::atan2(axis.y(), axis.x()) * 180.0 / std::numbers::pi;
    angle = std::fmod(angle + 360.0, 180.0);
    br.angle_deg = angle;

    double lo = 0.0, hi = 0.0, lo_n = 0.0, hi_n = 0.0;
    for (const auto j : members) {
      const Vec2 r = positions[j] - br.centroid;
      lo = std::min(lo, r.dot(axis));
      hi = std::max(hi, r.dot(axis));
      lo_n = std::min(lo_n, r.dot(across));
      hi_n = std::max(hi_n, r.dot(across));
    }
    br.extent_along = hi - lo;
    br.extent_across = hi_n - lo_n;

    const double bin = 2.0 * spacing;
    const auto nbins = static_cast<std::size_t>(std::floor((hi - lo) / bin)) + 1;
    std::vector<Vec2> sum(nbins, Vec2::Zero());
    std::vector<int> count(nbins, 0);
    for (const auto j : members) {
      const double s = (positions[j] - br.centroid).dot(axis);
      const auto b = std::min(nbins - 1, static_cast<std::size_t>((s - lo) / bin));
      sum[b] += positions[j];
      ++count[b];
    }
    for (std::size_t b = 0; b < nbins; ++b) {
      if (count[b] > 0) br.polyline.push_back(sum[b] / count[b]);
    }
    out.branches.push_back(std::move(br));
  }
  std::stable_sort(out.branches.begin(), out.branches.end(),
                   [](const CrackBranch& a, const CrackBranch& b) {
                     return a.members.size() > b.members.size();
                   });
  if (!out.branches.empty()) out.dominant_angle_deg = out.branches.front().angle_deg;
  return out;
}

}  // namespace anisopd
