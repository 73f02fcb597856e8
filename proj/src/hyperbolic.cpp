#include "ranklab/hyperbolic.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ranklab/errors.hpp"
#include "ranklab/numerics.hpp"

namespace ranklab {

Vec3 normalize_point(Vec3 p) {
  double n = -mink(p, p);
  double s = 1.0 / std::sqrt(n);
  if (p[2] < 0) s = -s;
  return s * p;
}

Vec3 normalize_spacelike(Vec3 n) {
  double s = 1.0 / std::sqrt(mink(n, n));
  return s * n;
}

Isometry Isometry::operator*(const Isometry& o) const {
  Isometry r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += m[3 * i + k] * o.m[3 * k + j];
      r.m[3 * i + j] = s;
    }
  return r;
}

Isometry Isometry::inverse() const {
  // g^-1 = eta g^T eta with eta = diag(1,1,-1)
  Isometry r;
  static const double eta[3] = {1, 1, -1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[3 * i + j] = eta[i] * m[3 * j + i] * eta[j];
  return r;
}

Isometry Isometry::rotation(double th) {
  Isometry g;
  double c = std::cos(th), s = std::sin(th);
  g.m = {c, -s, 0, s, c, 0, 0, 0, 1};
  return g;
}

Isometry Isometry::boost_x(double t) {
  Isometry g;
  double c = std::cosh(t), s = std::sinh(t);
  g.m = {c, 0, s, 0, 1, 0, s, 0, c};
  return g;
}

Isometry Isometry::boost_y(double t) {
  Isometry g;
  double c = std::cosh(t), s = std::sinh(t);
  g.m = {1, 0, 0, 0, c, s, 0, s, c};
  return g;
}

AxisFrame axis_frame(const Vec3& pole) {
  AxisFrame a;
  a.pole = normalize_spacelike(pole);
  // base = point on the axis closest to the chart origin e_t
  Vec3 et{0, 0, 1};
  Vec3 raw = et - mink(et, a.pole) * a.pole;
  a.base = normalize_point(raw);
  a.dir = mcross(a.pole, a.base);
  double nn = mink(a.dir, a.dir);
  a.dir = (1.0 / std::sqrt(nn)) * a.dir;
  return a;
}

Vec3 equidistant_point(const AxisFrame& a, double u, double rho) {
  Vec3 axis_pt = std::cosh(u) * a.base + std::sinh(u) * a.dir;
  // move distance rho off the axis toward the pole side when rho > 0
  return std::cosh(rho) * axis_pt + std::sinh(rho) * a.pole;
}

Isometry Isometry::translation_along(const Vec3& n, double t) {
  AxisFrame a = axis_frame(n);
  // frame columns (dir, pole, base): boost acts in the (dir, base) plane
  Eigen::Matrix3d F;
  F << a.dir[0], a.pole[0], a.base[0], a.dir[1], a.pole[1], a.base[1], a.dir[2], a.pole[2],
      a.base[2];
  Eigen::Matrix3d B;
  B << std::cosh(t), 0, std::sinh(t), 0, 1, 0, std::sinh(t), 0, std::cosh(t);
  Eigen::Matrix3d eta = Eigen::Vector3d(1, 1, -1).asDiagonal();
  Eigen::Matrix3d Finv = Eigen::Vector3d(1, 1, -1).asDiagonal() * F.transpose() * eta;
  Eigen::Matrix3d G = F * B * Finv;
  Isometry g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g.m[3 * i + j] = G(i, j);
  return g;
}

std::optional<Vec3> axis_pole(const Isometry& g) {
  // eigenvalues of a hyperbolic element are e^l, e^-l, 1; the annihilating
  // product (g - e^l)(g - e^-l) projects any vector onto the pole line
  double l = translation_length(g);
  if (!(l > 1e-12)) return std::nullopt;
  Eigen::Matrix3d M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = g.m[3 * i + j];
  Eigen::Matrix3d P = (M - std::exp(l) * Eigen::Matrix3d::Identity()) *
                      (M - std::exp(-l) * Eigen::Matrix3d::Identity());
  int best = 0;
  double bn = -1;
  for (int c = 0; c < 3; ++c) {
    double nn = P.col(c).squaredNorm();
    if (nn > bn) {
      bn = nn;
      best = c;
    }
  }
  Vec3 n{P(0, best), P(1, best), P(2, best)};
  double nn = mink(n, n);
  if (nn <= 0) return std::nullopt;
  n = normalize_spacelike(n);
  // orient the pole so that the translation moves in +dir of axis_frame
  AxisFrame a = axis_frame(n);
  Vec3 moved = g.apply(a.base);
  if (mink(moved, a.dir) < 0) n = {-n[0], -n[1], -n[2]};
  return n;
}

double translation_length(const Isometry& g) {
  Eigen::Matrix3d M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = g.m[3 * i + j];
  double tr = M.trace();
  // hyperbolic: eigenvalues e^l, e^-l, 1 so tr = 1 + 2 cosh(l)
  if (tr <= 3.0) return 0.0;
  return std::acosh((tr - 1.0) / 2.0);
}

std::optional<double> solve_cosh_sinh(double a, double b, double c, double t_lo, double t_hi,
                                      double tol) {
  auto g = [&](double t) { return a * std::cosh(t) + b * std::sinh(t) - c; };
  double glo = g(t_lo), ghi = g(t_hi);
  auto refine = [&](double lo, double hi) {
    return brent_root(g, lo, hi, tol);
  };
  if (glo == 0.0) return t_lo;
  // interior stationary point: g' = a sinh + b cosh = 0 at tanh t = -b/a
  double tstar = 0;
  bool has_star = false;
  if (std::abs(b) < std::abs(a)) {
    tstar = std::atanh(-b / a);
    has_star = tstar > t_lo && tstar < t_hi;
  }
  if (has_star) {
    double gs = g(tstar);
    if (glo * gs < 0) return refine(t_lo, tstar);
    if (gs == 0.0) return tstar;
    if (gs * ghi < 0) return refine(tstar, t_hi);
    return std::nullopt;
  }
  if (glo * ghi < 0) return refine(t_lo, t_hi);
  if (ghi == 0.0) return t_hi;
  return std::nullopt;
}

DiskPoint to_disk(const Vec3& p) { return {p[0] / (1 + p[2]), p[1] / (1 + p[2])}; }

Vec3 from_disk(const DiskPoint& d) {
  double r2 = d.x * d.x + d.y * d.y;
  if (r2 >= 1.0) throw Error(ErrorCode::ConfigError, "disk point outside the unit disk");
  double s = 1.0 / (1.0 - r2);
  return {2 * d.x * s, 2 * d.y * s, (1 + r2) * s};
}

double disk_angle(const Vec3& p, const Vec3& u) {
  double w = 1 + p[2];
  double dx = u[0] / w - p[0] * u[2] / (w * w);
  double dy = u[1] / w - p[1] * u[2] / (w * w);
  return std::atan2(dy, dx);
}

Vec3 tangent_from_disk_angle(const Vec3& p, double psi) {
  DiskPoint d = to_disk(p);
  double r2 = d.x * d.x + d.y * d.y;
  double s = 1.0 / (1.0 - r2);
  // chart frame: d/da and d/db of from_disk at (a,b); the chart is conformal
  auto push = [&](double va, double vb) -> Vec3 {
    double dsda = 2 * d.x * s * s * va + 2 * d.y * s * s * vb;  // d s / d(a,b) dotted
    return {2 * va * s + 2 * d.x * dsda, 2 * vb * s + 2 * d.y * dsda,
            (2 * d.x * va + 2 * d.y * vb) * s + (1 + r2) * dsda};
  };
  Vec3 t = push(std::cos(psi), std::sin(psi));
  // project out the p component and normalize
  double ip = mink(t, p);
  t = t + ip * p;
  return (1.0 / std::sqrt(mink(t, t))) * t;
}

}  // namespace ranklab
