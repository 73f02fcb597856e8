// Potentials on either backend.  On the testbed a potential is locally
// constant and carried as per-edge integrals; on the surface it is a
// pointwise function on the unit tangent bundle (the bundled families are
// supported in the neck band, which keeps arc integrals one-dimensional).

#ifndef RANKLAB_POTENTIAL_HPP
#define RANKLAB_POTENTIAL_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ranklab/suspension.hpp"

namespace ranklab {

struct SurfacePotential;  // defined with the surface backend

struct PotentialField {
  std::string name = "zero";
  // testbed realization: integral of phi over each edge segment
  std::vector<double> edge_weights;
  // surface realization
  std::shared_ptr<const SurfacePotential> surface;

  double sup_norm = 0.0;
  double flat_value = 0.0;       // value on the flat part, when constant there
  bool constant_on_flat = true;

  bool is_symbolic() const { return !edge_weights.empty(); }
};

PotentialField zero_potential(const MarkovSuspension& susp);
PotentialField symbolic_potential(const MarkovSuspension& susp, std::string name,
                                  std::vector<double> edge_weights);
// phi + c, realized on the testbed as edge_weights + c * roof
PotentialField shifted_potential(const MarkovSuspension& susp, const PotentialField& phi,
                                 double c);
// per-edge uniform random values in [lo, hi]; flat edges share one value
PotentialField random_edge_potential(const MarkovSuspension& susp, double lo, double hi,
                                     std::uint64_t seed);

}  // namespace ranklab

#endif
