#include "ranklab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ranklab {

namespace {

void fill_metadata(const MarkovSuspension& susp, PotentialField& phi) {
  phi.sup_norm = 0.0;
  bool have_flat = false;
  phi.constant_on_flat = true;
  for (int e = 0; e < susp.num_edges(); ++e) {
    double pointwise = phi.edge_weights[e] / susp.edges[e].roof;  // locally constant value
    phi.sup_norm = std::max(phi.sup_norm, std::abs(pointwise));
    if (susp.edges[e].flat) {
      if (!have_flat) {
        phi.flat_value = pointwise;
        have_flat = true;
      } else if (std::abs(pointwise - phi.flat_value) > 1e-12) {
        phi.constant_on_flat = false;
      }
    }
  }
  if (!have_flat) phi.flat_value = 0.0;
}

}  // namespace

PotentialField zero_potential(const MarkovSuspension& susp) {
  PotentialField phi;
  phi.name = "zero";
  phi.edge_weights.assign(susp.num_edges(), 0.0);
  return phi;
}

PotentialField symbolic_potential(const MarkovSuspension& susp, std::string name,
                                  std::vector<double> edge_weights) {
  if (static_cast<int>(edge_weights.size()) != susp.num_edges())
    throw Error(ErrorCode::ConfigError, "potential weight count does not match edge count");
  PotentialField phi;
  phi.name = std::move(name);
  phi.edge_weights = std::move(edge_weights);
  fill_metadata(susp, phi);
  return phi;
}

PotentialField shifted_potential(const MarkovSuspension& susp, const PotentialField& phi,
                                 double c) {
  PotentialField out = phi;
  out.name = phi.name + "+" + std::to_string(c);
  for (int e = 0; e < susp.num_edges(); ++e) out.edge_weights[e] += c * susp.edges[e].roof;
  fill_metadata(susp, out);
  return out;
}

PotentialField random_edge_potential(const MarkovSuspension& susp, double lo, double hi,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> w(susp.num_edges());
  double flat_pointwise = dist(rng);
  for (int e = 0; e < susp.num_edges(); ++e) {
    double pointwise = susp.edges[e].flat ? flat_pointwise : dist(rng);
    w[e] = pointwise * susp.edges[e].roof;
  }
  return symbolic_potential(susp, "random[" + std::to_string(lo) + "," + std::to_string(hi) + "]",
                            std::move(w));
}

}  // namespace ranklab
