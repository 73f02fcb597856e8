#include "ranklab/profile.hpp"

#include <cmath>

namespace ranklab {

namespace {
constexpr int kTableSteps = 8192;
}

NeckProfile::NeckProfile(double c, double w, CollarParams collar)
    : c_(c), w_(w), collar_(std::move(collar)) {
  if (!(c > 0)) throw Error(ErrorCode::ConfigError, "core radius must be positive");
  if (w < 0) throw Error(ErrorCode::ConfigError, "flat width must be nonnegative");
  if (!(collar_.transition_length > 0))
    throw Error(ErrorCode::ProfileNotNonpositivelyCurved,
                "collar transition length must be positive");
  if (collar_.ramp != "cosine" && collar_.ramp != "smooth" && collar_.ramp != "linear")
    throw Error(ErrorCode::ConfigError, "unknown collar ramp " + collar_.ramp);
  r1_ = w_ / 2 + collar_.transition_length;

  // integrate f'' = -K f across the transition with RK4 on (f, f')
  double h = collar_.transition_length / kTableSteps;
  tab_h_ = h;
  tab_f_.resize(kTableSteps + 1);
  tab_df_.resize(kTableSteps + 1);
  double f = c_, df = 0.0;
  tab_f_[0] = f;
  tab_df_[0] = df;
  auto acc = [&](double r, double fv) { return -curvature_at_raw(r) * fv; };
  for (int i = 0; i < kTableSteps; ++i) {
    double r = w_ / 2 + i * h;
    double k1f = df, k1d = acc(r, f);
    double k2f = df + 0.5 * h * k1d, k2d = acc(r + 0.5 * h, f + 0.5 * h * k1f);
    double k3f = df + 0.5 * h * k2d, k3d = acc(r + 0.5 * h, f + 0.5 * h * k2f);
    double k4f = df + h * k3d, k4d = acc(r + h, f + h * k3f);
    f += h / 6 * (k1f + 2 * k2f + 2 * k3f + k4f);
    df += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
    tab_f_[i + 1] = f;
    tab_df_[i + 1] = df;
  }
  f1_ = f;
  df1_ = df;
  double a2 = f1_ * f1_ - df1_ * df1_;
  if (!(a2 > 0))
    throw Error(ErrorCode::ProfileNotNonpositivelyCurved,
                "transition is too long: profile slope reached the cosh asymptote");
  scale_ = std::sqrt(a2);
  rho1_ = std::atanh(df1_ / f1_);
}

// the raw ramp needs to be usable inside the constructor
double NeckProfile::ramp_value(double u) const {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  if (collar_.ramp == "cosine") return 0.5 * (1 - std::cos(std::numbers::pi * u));
  if (collar_.ramp == "linear") return u;
  // smooth: C-infinity step from exp(-1/u)
  double a = std::exp(-1.0 / u);
  double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double NeckProfile::curvature_at_raw(double r) const {
  if (r <= w_ / 2) return 0.0;
  if (r >= r1_) return -1.0;
  return -ramp_value((r - w_ / 2) / collar_.transition_length);
}

double NeckProfile::curvature(double r) const { return curvature_at_raw(std::abs(r)); }

double NeckProfile::f(double r) const {
  r = std::abs(r);
  if (r <= w_ / 2) return c_;
  if (r >= r1_) return f1_ * std::cosh(r - r1_) + df1_ * std::sinh(r - r1_);
  double x = (r - w_ / 2) / tab_h_;
  int i = static_cast<int>(x);
  if (i >= kTableSteps) i = kTableSteps - 1;
  double s = x - i;
  // cubic Hermite on (f, f') with df as derivative data
  double h = tab_h_;
  double p0 = tab_f_[i], p1 = tab_f_[i + 1], m0 = tab_df_[i] * h, m1 = tab_df_[i + 1] * h;
  double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * p1 +
         (s3 - s2) * m1;
}

double NeckProfile::df(double r) const {
  double sign = r < 0 ? -1.0 : 1.0;
  r = std::abs(r);
  if (r <= w_ / 2) return 0.0;
  if (r >= r1_) return sign * (f1_ * std::sinh(r - r1_) + df1_ * std::cosh(r - r1_));
  double x = (r - w_ / 2) / tab_h_;
  int i = static_cast<int>(x);
  if (i >= kTableSteps) i = kTableSteps - 1;
  double s = x - i;
  double p0 = tab_df_[i], p1 = tab_df_[i + 1];
  // derivative data for f' is f'' = -K f, from the table
  double r0 = w_ / 2 + i * tab_h_;
  double m0 = -curvature_at_raw(r0) * tab_f_[i] * tab_h_;
  double m1 = -curvature_at_raw(r0 + tab_h_) * tab_f_[i + 1] * tab_h_;
  double s2 = s * s, s3 = s2 * s;
  double v = (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * p1 +
             (s3 - s2) * m1;
  return sign * v;
}

}  // namespace ranklab
