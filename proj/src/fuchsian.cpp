#include "ranklab/fuchsian.hpp"

#include <algorithm>
#include <cmath>

namespace ranklab {

namespace {

Isometry word_product(const Isometry* gens, const Isometry* invs, int n_gens,
                      const std::vector<int>& word) {
  Isometry g;
  for (int letter : word) {
    if (letter < 0 || letter >= 2 * n_gens)
      throw Error(ErrorCode::ConfigError, "letter out of range");
    g = g * (letter < n_gens ? gens[letter] : invs[letter - n_gens]);
  }
  return g;
}

double frob_dist_to_identity(const Isometry& g) {
  double worst = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(g.m[3 * i + j] - (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace

Isometry HoledTorusGroup::evaluate(const std::vector<int>& word) const {
  Isometry invs[2] = {gen[0].inverse(), gen[1].inverse()};
  return word_product(gen, invs, 2, word);
}

HoledTorusGroup make_holed_torus(double ell_b, double cover_radius) {
  if (!(ell_b > 0)) throw Error(ErrorCode::ConfigError, "boundary length must be positive");
  HoledTorusGroup g;
  g.boundary_length = ell_b;
  double tau = std::asinh(std::sqrt(std::cosh(ell_b / 4.0)));
  g.generator_length = 2.0 * tau;
  g.gen[0] = Isometry::boost_x(g.generator_length);
  g.gen[1] = Isometry::boost_y(g.generator_length);
  g.boundary = g.gen[0] * g.gen[1] * g.gen[0].inverse() * g.gen[1].inverse();
  auto pole = axis_pole(g.boundary);
  if (!pole)
    throw Error(ErrorCode::GluingMismatch, "commutator is not hyperbolic");
  g.boundary_pole = *pole;
  double got = translation_length(g.boundary);
  if (std::abs(got - ell_b) > 1e-9 * std::max(1.0, ell_b))
    throw Error(ErrorCode::GluingMismatch, "boundary length mismatch: " + std::to_string(got));
  Vec3 origin{0, 0, 1};
  g.core_side = mink(origin, g.boundary_pole) >= 0 ? +1 : -1;

  // BFS ball of group elements; collect distinct conjugate axes nearby
  Isometry invs[2] = {g.gen[0].inverse(), g.gen[1].inverse()};
  std::vector<Isometry> ball{Isometry::identity()};
  std::vector<Isometry> frontier = ball;
  const int kBfsDepth = 5;
  for (int depth = 0; depth < kBfsDepth; ++depth) {
    std::vector<Isometry> next;
    for (const auto& m : frontier)
      for (int l = 0; l < 4; ++l) next.push_back(m * (l < 2 ? g.gen[l] : invs[l - 2]));
    ball.insert(ball.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  for (const auto& m : ball) {
    Vec3 n = normalize_spacelike(m.apply(g.boundary_pole));
    bool dup = false;
    for (const auto& q : g.collar_axes)
      if (std::abs(std::abs(mink(q, n)) - 1.0) < 1e-9) {
        dup = true;
        break;
      }
    if (dup) continue;
    AxisFrame fr = axis_frame(n);
    if (dist(fr.base, origin) > cover_radius) continue;
    g.collar_axes.push_back(n);
    g.collar_moves.push_back(m);
  }
  double dmin = 1e300;
  for (std::size_t i = 0; i < g.collar_axes.size(); ++i)
    for (std::size_t j = i + 1; j < g.collar_axes.size(); ++j) {
      double ip = std::abs(mink(g.collar_axes[i], g.collar_axes[j]));
      if (ip < 1.0 - 1e-9)
        throw Error(ErrorCode::GluingMismatch, "conjugate boundary axes cross");
      dmin = std::min(dmin, std::acosh(std::max(ip, 1.0)));
    }
  g.min_axis_separation = dmin;

  // reduction ball: words up to length 3
  std::vector<Isometry> red{Isometry::identity()};
  std::vector<Isometry> fr2 = red;
  for (int depth = 0; depth < 3; ++depth) {
    std::vector<Isometry> next;
    for (const auto& m : fr2)
      for (int l = 0; l < 4; ++l) next.push_back(m * (l < 2 ? g.gen[l] : invs[l - 2]));
    red.insert(red.end(), next.begin(), next.end());
    fr2 = std::move(next);
  }
  g.reduction_ball = std::move(red);
  return g;
}

Isometry pull_to_center(const HoledTorusGroup& g, Vec3& p, double radius) {
  Vec3 origin{0, 0, 1};
  Isometry applied;
  for (int round = 0; round < 64; ++round) {
    double d = dist(p, origin);
    if (d <= radius) break;
    double best = d;
    const Isometry* pick = nullptr;
    for (const auto& m : g.reduction_ball) {
      double nd = dist(m.apply(p), origin);
      if (nd < best - 1e-12) {
        best = nd;
        pick = &m;
      }
    }
    if (!pick) break;
    p = normalize_point(pick->apply(p));
    applied = *pick * applied;
  }
  return applied;
}

Isometry Genus2Holonomy::evaluate(const std::vector<int>& word) const {
  Isometry invs[4] = {gen[0].inverse(), gen[1].inverse(), gen[2].inverse(), gen[3].inverse()};
  return word_product(gen, invs, 4, word);
}

Genus2Holonomy make_genus2(double ell_b, double twist, int sanity_word_length) {
  HoledTorusGroup torus = make_holed_torus(ell_b);
  Genus2Holonomy g2;
  g2.boundary_length = ell_b;
  g2.twist = twist;
  g2.gen[0] = torus.gen[0];
  g2.gen[1] = torus.gen[1];

  // J maps the oriented boundary axis of the second copy onto the reversed
  // boundary axis of the first, with a twist along it:
  //   J [c0,d0] J^-1 = translation by ell_b along the reversed axis = z^-1
  AxisFrame rev = axis_frame({-torus.boundary_pole[0], -torus.boundary_pole[1],
                              -torus.boundary_pole[2]});
  AxisFrame fwd = axis_frame(torus.boundary_pole);
  auto frame_iso = [](const AxisFrame& a) {
    Isometry f;
    f.m = {a.dir[0], a.pole[0], a.base[0], a.dir[1], a.pole[1], a.base[1],
           a.dir[2], a.pole[2], a.base[2]};
    return f;
  };
  Isometry J = frame_iso(rev) * Isometry::boost_x(twist) * frame_iso(fwd).inverse();
  g2.gen[2] = J * torus.gen[0] * J.inverse();
  g2.gen[3] = J * torus.gen[1] * J.inverse();

  Isometry rel = g2.evaluate({0, 1, 4, 5, 2, 3, 6, 7});  // a b a' b' c d c' d'
  g2.relator_defect = frob_dist_to_identity(rel);
  if (g2.relator_defect > 1e-9)
    throw Error(ErrorCode::GluingMismatch,
                "relator defect " + std::to_string(g2.relator_defect));

  // discreteness sanity: all short reduced words must be genuinely hyperbolic
  double min_len = 1e300;
  Isometry invs[4] = {g2.gen[0].inverse(), g2.gen[1].inverse(), g2.gen[2].inverse(),
                      g2.gen[3].inverse()};
  std::vector<std::pair<std::vector<int>, Isometry>> frontier{{{}, Isometry::identity()}};
  for (int depth = 0; depth < sanity_word_length; ++depth) {
    std::vector<std::pair<std::vector<int>, Isometry>> next;
    for (const auto& [w, m] : frontier)
      for (int l = 0; l < 8; ++l) {
        if (!w.empty() && (w.back() ^ 4) == l) continue;  // no free backtracking
        auto nw = w;
        nw.push_back(l);
        Isometry nm = m * (l < 4 ? g2.gen[l] : invs[l - 4]);
        min_len = std::min(min_len, translation_length(nm));
        next.push_back({std::move(nw), nm});
      }
    frontier = std::move(next);
  }
  g2.min_translation = min_len;
  if (!(min_len > 0.05))
    throw Error(ErrorCode::GluingMismatch,
                "short or elliptic element: systole bound " + std::to_string(min_len));

  std::vector<Isometry> red{Isometry::identity()};
  std::vector<Isometry> fr = red;
  for (int depth = 0; depth < 2; ++depth) {
    std::vector<Isometry> next;
    for (const auto& m : fr)
      for (int l = 0; l < 8; ++l) next.push_back(m * (l < 4 ? g2.gen[l] : invs[l - 4]));
    red.insert(red.end(), next.begin(), next.end());
    fr = std::move(next);
  }
  g2.reduction_ball = std::move(red);
  return g2;
}

}  // namespace ranklab
