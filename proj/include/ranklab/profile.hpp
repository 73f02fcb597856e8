// Warped-product neck profile: metric dr^2 + f(r)^2 dtheta^2 with
// f == c on the flat band |r| <= w/2, a controlled curvature ramp on
// w/2 < |r| < w/2 + s, and exact curvature -1 beyond.  The profile solves
// f'' = -K f with K prescribed by the ramp, so K <= 0 holds by construction
// and the metric is C^2 (C^3 for the cosine ramp) across the joins.

#ifndef RANKLAB_PROFILE_HPP
#define RANKLAB_PROFILE_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ranklab/errors.hpp"

namespace ranklab {

struct CollarParams {
  std::string ramp = "cosine";  // cosine | smooth | linear
  double transition_length = 0.35;
};

class NeckProfile {
 public:
  // c = core radius (core circle length = 2 pi c), w = flat width
  NeckProfile(double c, double w, CollarParams collar);

  double curvature(double r) const;  // K(r) <= 0, even in r
  double f(double r) const;          // warp factor, even
  double df(double r) const;         // f'(r), odd

  double core_radius() const { return c_; }
  double flat_width() const { return w_; }
  double r1() const { return r1_; }            // edge of the non-hyperbolic zone
  double f1() const { return f1_; }            // f(r1)
  double df1() const { return df1_; }          // f'(r1)
  double boundary_scale() const { return scale_; }   // A: f = A cosh(r - r0) beyond r1
  double rho1() const { return rho1_; }        // collar offset: arctanh(f'/f) at r1
  double boundary_length() const { return 2 * std::numbers::pi * scale_; }

  const CollarParams& collar() const { return collar_; }

 private:
  double ramp_value(double u) const;  // monotone 0 -> 1 on [0,1]
  double curvature_at_raw(double r_abs) const;
  double c_, w_, r1_, f1_, df1_, scale_, rho1_;
  CollarParams collar_;
  // dense table of (f, f') over the transition zone, cubic Hermite evaluated
  std::vector<double> tab_f_, tab_df_;
  double tab_h_ = 0;
};

}  // namespace ranklab

#endif
