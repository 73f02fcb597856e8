// Equilibrium-state approximation along the two routes: exact Gibbs states
// of increasing subsystems, and exponentially weighted averages of periodic
// orbit measures, with rate-function diagnostics for both.

#ifndef RANKLAB_EQUILIBRIUM_HPP
#define RANKLAB_EQUILIBRIUM_HPP

#include <string>
#include <vector>

#include "ranklab/deviation.hpp"
#include "ranklab/pressure.hpp"

namespace ranklab {

struct EmpiricalMeasure {
  std::vector<double> edge_time_fraction;  // time fraction per edge, sums to 1
  double window_t = 0.0;                   // window upper edge it was built from
  double log_partition = kNegInf;          // log sum of the weights used
  double ensemble_entropy = 0.0;           // Shannon entropy of the orbit weights
  double mean_length = 0.0;                // weighted mean orbit length
  double phi_average = 0.0;                // weighted time-average of phi
  std::string provenance;
};

// Normalized exp(int phi) - weighted mixture of normalized periodic orbit
// measures over the window [T-1, T), in edge time fractions.
EmpiricalMeasure orbit_weighted_measure(const MarkovSuspension& susp, const PotentialField& phi,
                                        double t);

struct SubsystemEquilibrium {
  EdgeSubset subsystem;
  double pressure = 0.0;
  MarkovMeasure gibbs;
  std::vector<double> time_fraction;
};

// Exact Gibbs states and pressures along an increasing chain of strongly
// connected subsystems avoiding the flat subgraph.
std::vector<SubsystemEquilibrium> subsystem_equilibria(const MarkovSuspension& susp,
                                                       const std::vector<EdgeSubset>& chain,
                                                       const PotentialField& phi);

struct EquilibriumDiagnostics {
  RateFunctionEvaluation rate;
  bool approximate_equilibrium = false;
  double threshold = 1e-3;
  double stationarity_defect = 0.0;
};

// I_phi of an empirical orbit mixture.  The entropy term uses the ensemble
// entropy of the weights divided by the window time: orbit measures carry no
// entropy themselves and the ensemble term is what converges to h under the
// weighted-average construction.
EquilibriumDiagnostics equilibrium_diagnostics(const MarkovSuspension& susp,
                                               const PotentialField& phi,
                                               const EmpiricalMeasure& mu,
                                               double threshold = 1e-3);

// Vertex balance defect of edge time fractions (stationarity proxy).
double stationarity_defect(const MarkovSuspension& susp,
                           const std::vector<double>& edge_time_fraction);

}  // namespace ranklab

#endif
