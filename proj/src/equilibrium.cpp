#include "ranklab/equilibrium.hpp"

#include <algorithm>
#include <cmath>

namespace ranklab {

EmpiricalMeasure orbit_weighted_measure(const MarkovSuspension& susp, const PotentialField& phi,
                                        double t) {
  EmpiricalMeasure mu;
  mu.window_t = t;
  mu.provenance = "orbit_weighted:" + phi.name + ":T=" + std::to_string(t);
  std::vector<double> freq(susp.num_edges(), 0.0);
  double shift = kNegInf;
  // first pass for the exponent shift
  EnumerateOptions opts;
  opts.aux_weights = {&phi.edge_weights};
  opts.budget = susp.options.cycle_budget;
  enumerate_primitive_cycles(
      susp, t,
      [&](const CycleView& v) {
        if (v.length >= t - 1) shift = std::max(shift, v.aux_sums[0]);
      },
      opts);
  if (!std::isfinite(shift)) throw Error(ErrorCode::EmptyWindow, "no orbits in the window");
  CompensatedSum z, xw, lw, pw;
  enumerate_primitive_cycles(
      susp, t,
      [&](const CycleView& v) {
        if (v.length < t - 1) return;
        double w = std::exp(v.aux_sums[0] - shift);
        z.add(w);
        xw.add(w * (v.aux_sums[0] - shift));
        lw.add(w * v.length);
        pw.add(w * (v.aux_sums[0] / v.length));
        for (int e : v.edges) freq[e] += w * susp.edges[e].roof / v.length;
      },
      opts);
  double zz = z.value();
  mu.log_partition = std::log(zz) + shift;
  mu.ensemble_entropy = std::log(zz) - xw.value() / zz;  // -sum w/Z log(w/Z), shift cancels
  mu.mean_length = lw.value() / zz;
  mu.phi_average = pw.value() / zz;
  double norm = 0;
  for (double f : freq) norm += f;
  for (double& f : freq) f /= norm;
  mu.edge_time_fraction = std::move(freq);
  return mu;
}

std::vector<SubsystemEquilibrium> subsystem_equilibria(const MarkovSuspension& susp,
                                                       const std::vector<EdgeSubset>& chain,
                                                       const PotentialField& phi) {
  EdgeSubset flat = susp.flat_edges();
  int n_flat = static_cast<int>(std::count(flat.begin(), flat.end(), 1));
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (!subgraph_strongly_connected(susp, chain[k]))
      throw Error(ErrorCode::SubgraphDisconnected,
                  "subsystem " + std::to_string(k) + " is not strongly connected");
    if (k > 0) {
      for (int e = 0; e < susp.num_edges(); ++e)
        if (chain[k - 1][e] && !chain[k][e])
          throw Error(ErrorCode::NotIncreasing, "chain is not increasing at step " +
                                                    std::to_string(k));
    }
    if (n_flat > 0) {
      int covered = 0;
      for (int e = 0; e < susp.num_edges(); ++e)
        if (flat[e] && chain[k][e]) ++covered;
      if (covered == n_flat)
        throw Error(ErrorCode::ConfigError,
                    "subsystem " + std::to_string(k) + " contains the whole flat subgraph");
    }
  }
  std::vector<SubsystemEquilibrium> out;
  double prev = kNegInf;
  for (const auto& sub : chain) {
    SubsystemEquilibrium se;
    se.subsystem = sub;
    se.pressure = transfer_pressure(susp, sub, &phi.edge_weights);
    se.gibbs = gibbs_measure(susp, phi, &sub);
    se.time_fraction = edge_time_fractions(susp, se.gibbs);
    if (se.pressure < prev - 1e-9)
      throw Error(ErrorCode::NotIncreasing, "subsystem pressures decreased along the chain");
    prev = se.pressure;
    out.push_back(std::move(se));
  }
  return out;
}

double stationarity_defect(const MarkovSuspension& susp,
                           const std::vector<double>& edge_time_fraction) {
  // convert time fractions to symbol frequencies and check vertex balance
  std::vector<double> sym(susp.num_edges());
  double norm = 0;
  for (int e = 0; e < susp.num_edges(); ++e) {
    sym[e] = edge_time_fraction[e] / susp.edges[e].roof;
    norm += sym[e];
  }
  if (norm <= 0) return 1.0;
  std::vector<double> in(susp.num_vertices(), 0.0), out(susp.num_vertices(), 0.0);
  for (int e = 0; e < susp.num_edges(); ++e) {
    in[susp.edges[e].dst] += sym[e] / norm;
    out[susp.edges[e].src] += sym[e] / norm;
  }
  double worst = 0;
  for (int v = 0; v < susp.num_vertices(); ++v)
    worst = std::max(worst, std::abs(in[v] - out[v]));
  return worst;
}

EquilibriumDiagnostics equilibrium_diagnostics(const MarkovSuspension& susp,
                                               const PotentialField& phi,
                                               const EmpiricalMeasure& mu, double threshold) {
  EquilibriumDiagnostics diag;
  diag.threshold = threshold;
  diag.stationarity_defect = stationarity_defect(susp, mu.edge_time_fraction);
  if (diag.stationarity_defect > 1e-6)
    throw Error(ErrorCode::NotInvariant, "empirical measure fails vertex balance by " +
                                             std::to_string(diag.stationarity_defect));
  diag.rate.measure_id = mu.provenance;
  diag.rate.pressure = transfer_pressure(susp, susp.all_edges(), &phi.edge_weights);
  diag.rate.entropy = mu.mean_length > 0 ? mu.ensemble_entropy / mu.mean_length : 0.0;
  diag.rate.phi_average = mu.phi_average;
  diag.rate.value = diag.rate.pressure - diag.rate.entropy - diag.rate.phi_average;
  diag.approximate_equilibrium = diag.rate.value <= threshold;
  return diag;
}

}  // namespace ranklab
