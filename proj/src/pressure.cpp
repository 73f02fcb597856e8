#include "ranklab/pressure.hpp"

#include <algorithm>
#include <cmath>

namespace ranklab {

void TestbedOrbits::for_each(double t_max, const PotentialField& phi,
                             const std::function<void(const OrbitRecord&)>& visit) const {
  if (!phi.is_symbolic())
    throw Error(ErrorCode::ConfigError, "testbed orbit source needs a symbolic potential");
  std::vector<double> expansion = susp_->expansion_vector();
  EnumerateOptions opts;
  opts.aux_weights = {&phi.edge_weights, &expansion};
  opts.budget = susp_->options.cycle_budget;
  bool with_powers = include_nonprimitive_;
  enumerate_primitive_cycles(
      *susp_, t_max,
      [&](const CycleView& v) {
        OrbitRecord r;
        r.length = v.length;
        r.phi_integral = v.aux_sums[0];
        r.chi = v.aux_sums[1] / v.length;
        r.regular = !v.all_flat;
        visit(r);
        if (with_powers) {
          for (int p = 2; p * v.length < t_max; ++p) {
            OrbitRecord q = r;
            q.length = p * v.length;
            q.phi_integral = p * v.aux_sums[0];
            visit(q);  // chi is a time average, unchanged under iteration
          }
        }
      },
      opts);
}

std::vector<GrowthWindow> gurevich_windows(const OrbitEnsemble& orbits, const PotentialField& phi,
                                           double t_max, const OrbitFilter& filter) {
  WindowAccumulator acc(t_max);
  orbits.for_each(t_max, phi, [&](const OrbitRecord& r) {
    if (filter.admits(r)) acc.add(r.length, r.phi_integral);
  });
  return acc.windows();
}

GrowthRateFit gurevich_estimate(const OrbitEnsemble& orbits, const PotentialField& phi,
                                double t_max, const OrbitFilter& filter,
                                const GrowthFitOptions& fit_opts) {
  GrowthFitOptions opts = fit_opts;
  opts.certified = t_max <= orbits.certified_horizon();
  return fit_growth(gurevich_windows(orbits, phi, t_max, filter), opts);
}

GrowthRateFit testbed_critical_exponent(const MarkovSuspension& susp, int base_vertex,
                                        const PotentialField& phi, double t_max,
                                        const GrowthFitOptions& fit_opts) {
  if (base_vertex < 0 || base_vertex >= susp.num_vertices())
    throw Error(ErrorCode::ConfigError, "base vertex out of range");
  if (!phi.is_symbolic())
    throw Error(ErrorCode::ConfigError, "testbed critical exponent needs a symbolic potential");
  // depth-first sweep over all paths based at the vertex, windowed at closures
  std::vector<std::vector<int>> out(susp.num_vertices());
  for (int e = 0; e < susp.num_edges(); ++e) out[susp.edges[e].src].push_back(e);
  WindowAccumulator acc(t_max);
  struct Frame {
    int vertex;
    std::size_t next;
    double len;
    double pot;
  };
  std::vector<Frame> stack{{base_vertex, 0, 0.0, 0.0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    bool descended = false;
    while (f.next < out[f.vertex].size()) {
      int e = out[f.vertex][f.next++];
      double nl = f.len + susp.edges[e].roof;
      if (!(nl < t_max)) continue;
      double np = f.pot + phi.edge_weights[e];
      int dst = susp.edges[e].dst;
      if (dst == base_vertex) acc.add(nl, np);
      stack.push_back({dst, 0, nl, np});
      descended = true;
      break;
    }
    if (!descended) stack.pop_back();
  }
  GrowthFitOptions opts = fit_opts;
  opts.poly_correction = false;  // based path counts carry no 1/T factor
  return fit_growth(acc.windows(), opts);
}

PressureChainReport check_pressure_chain(const PressureEstimates& est, double tolerance,
                                         bool conpot_holds, bool constant_on_flat) {
  PressureChainReport rep;
  rep.tolerance = tolerance;
  auto link = [&](const std::string& lo_name, double lo, const std::string& hi_name, double hi) {
    PressureChainReport::Link l;
    l.lower_name = lo_name;
    l.upper_name = hi_name;
    l.lower = lo;
    l.upper = hi;
    l.slack = hi - lo;
    l.ok = l.slack >= -tolerance;
    rep.links.push_back(l);
  };
  link("P_gur_regular", est.p_gur_regular, "P_gur", est.p_gur);
  link("P_gur", est.p_gur, "delta_gamma", est.delta_gamma);
  link("delta_gamma", est.delta_gamma, "P_top", est.p_top);
  rep.chain_ok = true;
  for (const auto& l : rep.links) rep.chain_ok = rep.chain_ok && l.ok;
  if (conpot_holds)
    rep.gurevich_equality = std::abs(est.p_gur - est.p_gur_regular) <= tolerance;
  if (constant_on_flat) {
    double lo = std::min(std::min(est.p_gur_regular, est.p_gur),
                         std::min(est.delta_gamma, est.p_top));
    double hi = std::max(std::max(est.p_gur_regular, est.p_gur),
                         std::max(est.delta_gamma, est.p_top));
    rep.all_equal = (hi - lo) <= tolerance;
  }
  return rep;
}

ConPotReport condition_conpot_testbed(const MarkovSuspension& susp, const PotentialField& phi,
                                      double cycle_census_horizon) {
  ConPotReport rep;
  EdgeSubset flat = susp.flat_edges();
  bool any_flat = std::count(flat.begin(), flat.end(), 1) > 0;
  std::vector<double> zero(susp.num_edges(), 0.0);
  if (!any_flat) {
    rep.vacuous = true;
    rep.holds = true;
    rep.lhs = kNegInf;
    rep.epsilon0 = transfer_pressure(susp, susp.all_edges(), &zero);
    rep.margin = 1e300;
    return rep;
  }
  rep.lhs = extreme_time_average(susp, flat, ExtremeSense::Max, &phi.edge_weights);
  rep.rhs_lower_bound =
      extreme_time_average(susp, susp.all_edges(), ExtremeSense::Min, &phi.edge_weights);
  rep.epsilon0 =
      transfer_pressure(susp, susp.all_edges(), &zero) - subgraph_growth_rate(susp, flat);

  // enumerated minimum over cycles that are not fully flat
  double cyc_min = 1e300;
  EnumerateOptions opts;
  opts.aux_weights = {&phi.edge_weights};
  opts.budget = susp.options.cycle_budget;
  enumerate_primitive_cycles(
      susp, cycle_census_horizon,
      [&](const CycleView& v) {
        if (!v.all_flat) cyc_min = std::min(cyc_min, v.aux_sums[0] / v.length);
      },
      opts);
  rep.rhs_cycle_min = cyc_min;

  rep.margin = rep.rhs_lower_bound + rep.epsilon0 - rep.lhs;
  rep.holds = rep.margin > 0;
  return rep;
}

double summation_split_defect(const OrbitEnsemble& orbits, const PotentialField& phi,
                              double t_max) {
  auto all = gurevich_windows(orbits, phi, t_max, OrbitFilter::all());
  auto reg = gurevich_windows(orbits, phi, t_max, OrbitFilter::regular_only());
  WindowAccumulator flat_acc(t_max);
  orbits.for_each(t_max, phi, [&](const OrbitRecord& r) {
    if (!r.regular) flat_acc.add(r.length, r.phi_integral);
  });
  auto flat = flat_acc.windows();
  double worst = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    double sa = std::isfinite(all[i].log_sum) ? std::exp(all[i].log_sum) : 0.0;
    double sr = std::isfinite(reg[i].log_sum) ? std::exp(reg[i].log_sum) : 0.0;
    double sf = std::isfinite(flat[i].log_sum) ? std::exp(flat[i].log_sum) : 0.0;
    double scale = std::max({sa, sr + sf, 1e-300});
    worst = std::max(worst, std::abs(sa - (sr + sf)) / scale);
  }
  return worst;
}

}  // namespace ranklab
