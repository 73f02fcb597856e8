// Hyperbolic-potential checks, the level-2 rate function, and the filtered
// large-deviation experiments.

#ifndef RANKLAB_DEVIATION_HPP
#define RANKLAB_DEVIATION_HPP

#include <functional>
#include <optional>
#include <vector>

#include "ranklab/pressure.hpp"

namespace ranklab {

struct HyperbolicityReport {
  double pressure = 0.0;           // P(phi)
  double alpha = 0.0;              // P(phi) - max phi (pointwise sup of the potential)
  double max_phi = 0.0;
  double max_ratio_cycle = 0.0;    // exact limit of max phi^t / t over orbits
  std::vector<std::pair<double, double>> inf_t_values;  // (t, t P - max phi^t) samples
  bool verdict = false;            // hyperbolic: some t has t P - max phi^t > 0
};

// Testbed check: the pressure comes from the transfer oracle and the
// t -> infinity limit of max phi^t / t is the exact max ratio cycle; the
// sampled t curve walks k-edge segments by dynamic programming.
HyperbolicityReport hyperbolicity_check(const MarkovSuspension& susp, const PotentialField& phi,
                                        const std::vector<int>& t_samples = {1, 2, 4, 8, 16});

struct CohomologyReport {
  double max_cycle_defect = 0.0;   // max |int psi - int phi| over enumerated cycles
  double gurevich_slope_phi = 0.0;
  double gurevich_slope_psi = 0.0;
};

// Builds psi = phi - (coboundary of eta) for a vertex function eta and checks
// that per-orbit integrals and Gurevich data are unchanged.
CohomologyReport cohomology_shift_check(const MarkovSuspension& susp, const PotentialField& phi,
                                        const std::vector<double>& eta_vertex, double t_max);

struct RateFunctionEvaluation {
  std::string measure_id;
  double value = 0.0;      // I_phi(mu) = P(phi) - h(mu) - int phi dmu
  double pressure = 0.0;
  double entropy = 0.0;    // h(mu) for the flow (shift entropy / mean roof)
  double phi_average = 0.0;
};

// Stationary Markov measure on the edge shift, lifted to the suspension.
struct MarkovMeasure {
  std::vector<double> edge_prob;    // P(e | src e), rows sum to 1
  std::vector<double> vertex_dist;  // stationary distribution pi
};

// Gibbs measure of phi from the transfer-operator eigendata at s = P(phi),
// optionally restricted to a strongly connected subsystem.
MarkovMeasure gibbs_measure(const MarkovSuspension& susp, const PotentialField& phi,
                            const EdgeSubset* subsystem = nullptr);

// Edge time-fractions of the suspension flow under the measure.
std::vector<double> edge_time_fractions(const MarkovSuspension& susp, const MarkovMeasure& mu);

RateFunctionEvaluation rate_function(const MarkovSuspension& susp, const PotentialField& phi,
                                     const MarkovMeasure& mu, double stationarity_tol = 1e-6);
RateFunctionEvaluation rate_function_cycle(const MarkovSuspension& susp,
                                           const PotentialField& phi, const PeriodicCycle& cycle);

// Q_phi(psi) = P(phi + psi) - P(phi), exact through the transfer oracle.
double q_functional(const MarkovSuspension& susp, const PotentialField& phi,
                    const PotentialField& psi);

struct FilteredGurevichReport {
  GrowthRateFit filtered;     // chi(beta) > alpha - delta
  GrowthRateFit unfiltered;
  GrowthRateFit complement;   // chi(beta) <= alpha - delta
  double alpha = 0.0;
  double delta = 0.0;
  double p_top = 0.0;
  double complement_bound = 0.0;  // P_top - delta
  bool complement_ok = false;     // complement slope <= bound + tol (empty passes)
  double tol = 0.05;
};

// Large-deviation experiment: both filtered sums plus the complementary
// low-exponent bound.  Requires alpha > 0 and 0 < delta < alpha.
FilteredGurevichReport ld_filtered_gurevich(const OrbitEnsemble& orbits,
                                            const PotentialField& phi, double t_max, double alpha,
                                            double delta, double p_top, double tol = 0.05);

}  // namespace ranklab

#endif
