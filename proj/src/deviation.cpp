#include "ranklab/deviation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace ranklab {

HyperbolicityReport hyperbolicity_check(const MarkovSuspension& susp, const PotentialField& phi,
                                        const std::vector<int>& t_samples) {
  HyperbolicityReport rep;
  rep.pressure = transfer_pressure(susp, susp.all_edges(), &phi.edge_weights);
  rep.max_phi = kNegInf;
  for (int e = 0; e < susp.num_edges(); ++e)
    rep.max_phi = std::max(rep.max_phi, phi.edge_weights[e] / susp.edges[e].roof);
  rep.alpha = rep.pressure - rep.max_phi;
  rep.max_ratio_cycle =
      extreme_time_average(susp, susp.all_edges(), ExtremeSense::Max, &phi.edge_weights);
  // exact criterion: inf_t max phi^t / t equals the max ratio cycle
  rep.verdict = rep.pressure > rep.max_ratio_cycle;

  // sampled curve: min over k-edge orbit segments of (t P - phi^t), evaluated
  // pathwise as sum (P roof_e - pot_e); a negative sample certifies nothing,
  // a positive one witnesses hyperbolicity at that scale
  int n = susp.num_vertices();
  for (int k : t_samples) {
    std::vector<double> best(n, 0.0);  // max over walks ending anywhere of sum(pot - P roof)
    std::vector<double> cur(n);
    double overall = kNegInf;
    std::vector<double> state(n, 0.0);
    for (int step = 0; step < k; ++step) {
      std::fill(cur.begin(), cur.end(), kNegInf);
      for (int e = 0; e < susp.num_edges(); ++e) {
        const SuspEdge& ed = susp.edges[e];
        double v = state[ed.src] + phi.edge_weights[e] - rep.pressure * ed.roof;
        cur[ed.dst] = std::max(cur[ed.dst], v);
      }
      state = cur;
    }
    for (int v = 0; v < n; ++v) overall = std::max(overall, state[v]);
    rep.inf_t_values.emplace_back(static_cast<double>(k), -overall);
  }
  return rep;
}

CohomologyReport cohomology_shift_check(const MarkovSuspension& susp, const PotentialField& phi,
                                        const std::vector<double>& eta_vertex, double t_max) {
  if (static_cast<int>(eta_vertex.size()) != susp.num_vertices())
    throw Error(ErrorCode::ConfigError, "eta must assign a value per vertex");
  std::vector<double> psi_w(susp.num_edges());
  for (int e = 0; e < susp.num_edges(); ++e)
    psi_w[e] = phi.edge_weights[e] - (eta_vertex[susp.edges[e].dst] - eta_vertex[susp.edges[e].src]);
  PotentialField psi = symbolic_potential(susp, phi.name + "-d(eta)", std::move(psi_w));

  CohomologyReport rep;
  EnumerateOptions opts;
  opts.aux_weights = {&phi.edge_weights, &psi.edge_weights};
  opts.budget = susp.options.cycle_budget;
  enumerate_primitive_cycles(
      susp, t_max,
      [&](const CycleView& v) {
        rep.max_cycle_defect =
            std::max(rep.max_cycle_defect, std::abs(v.aux_sums[0] - v.aux_sums[1]));
      },
      opts);
  TestbedOrbits orbits(susp);
  rep.gurevich_slope_phi = gurevich_estimate(orbits, phi, t_max).slope;
  rep.gurevich_slope_psi = gurevich_estimate(orbits, psi, t_max).slope;
  return rep;
}

MarkovMeasure gibbs_measure(const MarkovSuspension& susp, const PotentialField& phi,
                            const EdgeSubset* subsystem) {
  EdgeSubset all;
  if (!subsystem) {
    all = susp.all_edges();
    subsystem = &all;
  }
  double s = transfer_pressure(susp, *subsystem, &phi.edge_weights);
  // reindex the support
  int n = susp.num_vertices();
  std::vector<int> vindex(n, -1);
  std::vector<int> support;
  for (int e = 0; e < susp.num_edges(); ++e)
    if ((*subsystem)[e])
      for (int v : {susp.edges[e].src, susp.edges[e].dst})
        if (vindex[v] == -1) {
          vindex[v] = static_cast<int>(support.size());
          support.push_back(v);
        }
  int m = static_cast<int>(support.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (int e = 0; e < susp.num_edges(); ++e) {
    if (!(*subsystem)[e]) continue;
    const SuspEdge& ed = susp.edges[e];
    M(vindex[ed.src], vindex[ed.dst]) += std::exp(phi.edge_weights[e] - s * ed.roof);
  }
  auto perron = [&](const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    int idx = 0;
    double best = -1;
    for (int i = 0; i < m; ++i)
      if (std::abs(es.eigenvalues()[i]) > best) {
        best = std::abs(es.eigenvalues()[i]);
        idx = i;
      }
    Eigen::VectorXd v = es.eigenvectors().col(idx).real();
    if (v.sum() < 0) v = -v;
    return v;
  };
  Eigen::VectorXd r = perron(M);
  Eigen::VectorXd l = perron(M.transpose());

  MarkovMeasure mu;
  mu.edge_prob.assign(susp.num_edges(), 0.0);
  for (int e = 0; e < susp.num_edges(); ++e) {
    if (!(*subsystem)[e]) continue;
    const SuspEdge& ed = susp.edges[e];
    mu.edge_prob[e] =
        std::exp(phi.edge_weights[e] - s * ed.roof) * r[vindex[ed.dst]] / r[vindex[ed.src]];
  }
  mu.vertex_dist.assign(n, 0.0);
  double norm = 0;
  for (int i = 0; i < m; ++i) {
    mu.vertex_dist[support[i]] = l[i] * r[i];
    norm += l[i] * r[i];
  }
  for (int v = 0; v < n; ++v) mu.vertex_dist[v] /= norm;
  return mu;
}

std::vector<double> edge_time_fractions(const MarkovSuspension& susp, const MarkovMeasure& mu) {
  std::vector<double> tf(susp.num_edges());
  double mean_roof = 0;
  for (int e = 0; e < susp.num_edges(); ++e) {
    double nu = mu.vertex_dist[susp.edges[e].src] * mu.edge_prob[e];
    tf[e] = nu * susp.edges[e].roof;
    mean_roof += tf[e];
  }
  for (double& x : tf) x /= mean_roof;
  return tf;
}

RateFunctionEvaluation rate_function(const MarkovSuspension& susp, const PotentialField& phi,
                                     const MarkovMeasure& mu, double stationarity_tol) {
  int n = susp.num_vertices();
  // row stochasticity and stationarity
  std::vector<double> row(n, 0.0), flow_in(n, 0.0);
  for (int e = 0; e < susp.num_edges(); ++e) {
    const SuspEdge& ed = susp.edges[e];
    row[ed.src] += mu.edge_prob[e];
    flow_in[ed.dst] += mu.vertex_dist[ed.src] * mu.edge_prob[e];
  }
  for (int v = 0; v < n; ++v) {
    if (mu.vertex_dist[v] <= stationarity_tol) continue;  // off the measure's support
    if (std::abs(row[v] - 1.0) > stationarity_tol)
      throw Error(ErrorCode::NotInvariant, "transition rows must sum to 1");
    if (std::abs(flow_in[v] - mu.vertex_dist[v]) > stationarity_tol)
      throw Error(ErrorCode::NotInvariant, "vertex distribution is not stationary");
  }
  double h_shift = 0, mean_roof = 0, pot = 0;
  for (int e = 0; e < susp.num_edges(); ++e) {
    const SuspEdge& ed = susp.edges[e];
    double nu = mu.vertex_dist[ed.src] * mu.edge_prob[e];
    if (nu > 0) h_shift -= nu * std::log(mu.edge_prob[e]);
    mean_roof += nu * ed.roof;
    pot += nu * phi.edge_weights[e];
  }
  RateFunctionEvaluation out;
  out.measure_id = "markov";
  out.pressure = transfer_pressure(susp, susp.all_edges(), &phi.edge_weights);
  out.entropy = h_shift / mean_roof;      // Abramov: suspension entropy
  out.phi_average = pot / mean_roof;      // flow average of the potential
  out.value = out.pressure - out.entropy - out.phi_average;
  return out;
}

RateFunctionEvaluation rate_function_cycle(const MarkovSuspension& susp,
                                           const PotentialField& phi,
                                           const PeriodicCycle& cycle) {
  RateFunctionEvaluation out;
  out.measure_id = "cycle";
  out.pressure = transfer_pressure(susp, susp.all_edges(), &phi.edge_weights);
  out.entropy = 0.0;  // periodic measures carry no entropy
  double pot = 0;
  for (int e : cycle.edge_word) pot += phi.edge_weights[e];
  out.phi_average = pot / cycle.length;
  out.value = out.pressure - out.phi_average;
  return out;
}

double q_functional(const MarkovSuspension& susp, const PotentialField& phi,
                    const PotentialField& psi) {
  std::vector<double> sum(susp.num_edges());
  for (int e = 0; e < susp.num_edges(); ++e) sum[e] = phi.edge_weights[e] + psi.edge_weights[e];
  return transfer_pressure(susp, susp.all_edges(), &sum) -
         transfer_pressure(susp, susp.all_edges(), &phi.edge_weights);
}

FilteredGurevichReport ld_filtered_gurevich(const OrbitEnsemble& orbits,
                                            const PotentialField& phi, double t_max, double alpha,
                                            double delta, double p_top, double tol) {
  if (!(alpha > 0))
    throw Error(ErrorCode::AlphaNonpositive, "filtered experiment needs alpha > 0");
  if (!(delta > 0) || !(delta < alpha))
    throw Error(ErrorCode::ParameterViolation, "delta must lie in (0, alpha)");
  FilteredGurevichReport rep;
  rep.alpha = alpha;
  rep.delta = delta;
  rep.p_top = p_top;
  rep.tol = tol;
  double cut = alpha - delta;
  GrowthFitOptions opts;
  opts.certified = t_max <= orbits.certified_horizon();
  rep.filtered = fit_growth(gurevich_windows(orbits, phi, t_max, OrbitFilter::chi_above(cut)), opts);
  rep.unfiltered = fit_growth(gurevich_windows(orbits, phi, t_max, OrbitFilter::all()), opts);
  rep.complement =
      fit_growth_or_empty(gurevich_windows(orbits, phi, t_max, OrbitFilter::chi_at_most(cut)), opts);
  rep.complement_bound = p_top - delta;
  rep.complement_ok = rep.complement.empty || rep.complement.slope <= rep.complement_bound + tol;
  return rep;
}

}  // namespace ranklab
