// Fuchsian building blocks: the symmetric one-holed torus group with a
// prescribed boundary length (generators are equal-length boosts along
// perpendicular axes through the origin; sinh^2(t/2) = cosh(ell_b/4) makes
// tr[a,b] = -2 cosh(ell_b/2) exactly), conjugate-axis enumeration around the
// base domain, and the glued genus-2 holonomy used by the validation
// surface.

#ifndef RANKLAB_FUCHSIAN_HPP
#define RANKLAB_FUCHSIAN_HPP

#include <vector>

#include "ranklab/errors.hpp"
#include "ranklab/hyperbolic.hpp"

namespace ranklab {

struct HoledTorusGroup {
  double boundary_length = 0;    // ell_b
  double generator_length = 0;   // common translation length of the generators
  Isometry gen[2];               // a along the x-axis, b along the y-axis
  Isometry boundary;             // [a,b]
  Vec3 boundary_pole;            // oriented axis pole of [a,b]
  int core_side = +1;            // sign of <origin, pole>: side carrying the core

  // conjugate boundary-axis lifts with base point within reach of the domain
  std::vector<Vec3> collar_axes;        // includes boundary_pole first
  std::vector<Isometry> collar_moves;   // the conjugators, aligned with collar_axes
  double min_axis_separation = 0;       // over the enumerated ball

  // short group elements used to pull points back toward the origin
  std::vector<Isometry> reduction_ball;

  Isometry evaluate(const std::vector<int>& word) const;  // letters 0=a,1=b,2=a^-1,3=b^-1
};

// cover_radius bounds the base-point distance of enumerated conjugate axes.
HoledTorusGroup make_holed_torus(double boundary_length, double cover_radius = 6.0);

// Greedy canonicalization: applies elements of the reduction ball while the
// point sits farther than radius from the origin.  Returns the applied move.
Isometry pull_to_center(const HoledTorusGroup& g, Vec3& p, double radius = 4.0);

struct Genus2Holonomy {
  Isometry gen[4];   // a, b, c, d with [a,b][c,d] = 1
  double boundary_length = 0;
  double twist = 0;
  double relator_defect = 0;   // max-abs entry of rho([a,b][c,d]) - id
  double min_translation = 0;  // over reduced words of bounded length
  std::vector<Isometry> reduction_ball;

  Isometry evaluate(const std::vector<int>& word) const;  // 0..3 = a,b,c,d; 4..7 inverses
};

// Two symmetric holed tori glued along their boundary geodesic with the
// given Fenchel-Nielsen twist: a closed genus-2 hyperbolic surface.
Genus2Holonomy make_genus2(double boundary_length, double twist, int sanity_word_length = 5);

}  // namespace ranklab

#endif
