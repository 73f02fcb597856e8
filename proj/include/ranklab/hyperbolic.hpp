// Hyperbolic plane primitives in the hyperboloid model, signature (+,+,-):
// points are unit timelike vectors (z > 0), tangents unit spacelike vectors
// orthogonal to the point, geodesics flow in closed form, and oriented
// geodesics are represented by their unit spacelike pole.  Isometries are
// SO(2,1)+ matrices.  Everything here is exact up to rounding.

#ifndef RANKLAB_HYPERBOLIC_HPP
#define RANKLAB_HYPERBOLIC_HPP

#include <array>
#include <cmath>
#include <optional>
#include <vector>

namespace ranklab {

using Vec3 = std::array<double, 3>;

inline double mink(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

// Lorentzian cross product: orthogonal to both arguments.
inline Vec3 mcross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], -(a[0] * b[1] - a[1] * b[0])};
}

Vec3 normalize_point(Vec3 p);    // rescale to <p,p> = -1, z > 0
Vec3 normalize_spacelike(Vec3 n);  // rescale to <n,n> = +1

inline double dist(const Vec3& p, const Vec3& q) {
  double c = -mink(p, q);
  return std::acosh(c < 1.0 ? 1.0 : c);
}

// signed distance from p to the oriented geodesic with pole n
inline double signed_dist_to_axis(const Vec3& p, const Vec3& n) {
  return std::asinh(mink(p, n));
}

struct Isometry {
  // row-major 3x3
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec3 apply(const Vec3& v) const {
    return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2], m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
            m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
  }
  Isometry operator*(const Isometry& o) const;
  Isometry inverse() const;  // metric adjoint, exact for SO(2,1)
  static Isometry identity() { return {}; }
  static Isometry rotation(double theta);           // about the origin
  static Isometry boost_x(double t);                // translation along the x-axis geodesic
  static Isometry boost_y(double t);
  // translation by length t along the oriented geodesic with pole n
  static Isometry translation_along(const Vec3& n, double t);
};

// geodesic with pole n: point and tangent at arclength u from its base point
struct AxisFrame {
  Vec3 pole;   // unit spacelike
  Vec3 base;   // point on the axis
  Vec3 dir;    // unit tangent along the axis at base, oriented
};
AxisFrame axis_frame(const Vec3& pole);
// point at distance rho from the axis (side = sign against the pole) above
// arclength u along the axis
Vec3 equidistant_point(const AxisFrame& a, double u, double rho);

// pole of the axis of a hyperbolic isometry, oriented along the translation;
// empty when the isometry is not hyperbolic
std::optional<Vec3> axis_pole(const Isometry& g);
double translation_length(const Isometry& g);

// flow the (point, tangent) pair for time t, exactly
inline void flow(Vec3& p, Vec3& u, double t) {
  double c = std::cosh(t), s = std::sinh(t);
  Vec3 np = c * p + s * u;
  Vec3 nu = s * p + c * u;
  p = normalize_point(np);
  // re-orthogonalize against p to absorb rounding: <p,p> = -1
  double ip = mink(nu, p);
  nu = nu + ip * p;
  u = (1.0 / std::sqrt(mink(nu, nu))) * nu;
}

// smallest root of a*cosh(t) + b*sinh(t) = c in (t_lo, t_hi], if any
std::optional<double> solve_cosh_sinh(double a, double b, double c, double t_lo, double t_hi,
                                      double tol = 1e-13);

// Poincare disk chart (conformal): used for the public patch coordinates.
struct DiskPoint {
  double x = 0, y = 0;
};
DiskPoint to_disk(const Vec3& p);
Vec3 from_disk(const DiskPoint& d);
// angle of a hyperboloid tangent in the disk chart at p
double disk_angle(const Vec3& p, const Vec3& u);
// hyperboloid tangent with given disk-chart angle at p
Vec3 tangent_from_disk_angle(const Vec3& p, double psi);

}  // namespace ranklab

#endif
