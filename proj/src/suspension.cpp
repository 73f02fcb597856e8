#include "ranklab/suspension.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ranklab {

namespace {

// Tarjan over the vertex set using only edges of the subset.
std::vector<int> vertex_scc_ids(int n_vertices, const std::vector<SuspEdge>& edges,
                                const EdgeSubset& subset, int* n_scc_out) {
  std::vector<std::vector<int>> adj(n_vertices);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (subset[e]) adj[edges[e].src].push_back(edges[e].dst);
  std::vector<int> index(n_vertices, -1), low(n_vertices, 0), comp(n_vertices, -1);
  std::vector<char> on_stack(n_vertices, 0);
  std::vector<int> stack;
  int next_index = 0, n_comp = 0;
  // iterative Tarjan
  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < n_vertices; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = n_comp;
            if (w == f.v) break;
          }
          ++n_comp;
        }
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  if (n_scc_out) *n_scc_out = n_comp;
  return comp;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

EdgeSubset MarkovSuspension::flat_edges() const {
  EdgeSubset s(edges.size(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) s[e] = edges[e].flat ? 1 : 0;
  return s;
}

EdgeSubset MarkovSuspension::regular_edges() const {
  EdgeSubset s(edges.size(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) s[e] = edges[e].flat ? 0 : 1;
  return s;
}

std::vector<double> MarkovSuspension::potential_vector() const {
  std::vector<double> v(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) v[e] = edges[e].potential;
  return v;
}

std::vector<double> MarkovSuspension::expansion_vector() const {
  std::vector<double> v(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) v[e] = edges[e].expansion;
  return v;
}

std::uint64_t MarkovSuspension::content_hash() const {
  std::ostringstream oss;
  serialize_suspension(*this, oss);
  std::string s = oss.str();
  return fnv1a(s.data(), s.size());
}

bool subgraph_strongly_connected(const MarkovSuspension& susp, const EdgeSubset& subgraph) {
  // strong connectivity on the support (vertices touched by subgraph edges)
  std::vector<char> touched(susp.num_vertices(), 0);
  bool any = false;
  for (int e = 0; e < susp.num_edges(); ++e)
    if (subgraph[e]) {
      touched[susp.edges[e].src] = touched[susp.edges[e].dst] = 1;
      any = true;
    }
  if (!any) return false;
  int n_scc = 0;
  std::vector<int> comp = vertex_scc_ids(susp.num_vertices(), susp.edges, subgraph, &n_scc);
  int the_comp = -1;
  for (int v = 0; v < susp.num_vertices(); ++v) {
    if (!touched[v]) continue;
    if (the_comp == -1) the_comp = comp[v];
    if (comp[v] != the_comp) return false;
  }
  return true;
}

bool subgraph_has_cycle(const MarkovSuspension& susp, const EdgeSubset& subgraph) {
  std::vector<int> comp = vertex_scc_ids(susp.num_vertices(), susp.edges, subgraph, nullptr);
  for (int e = 0; e < susp.num_edges(); ++e) {
    if (!subgraph[e]) continue;
    if (comp[susp.edges[e].src] == comp[susp.edges[e].dst]) return true;  // includes self-loops
  }
  return false;
}

std::vector<EdgeSubset> edge_scc_decomposition(const MarkovSuspension& susp,
                                               const EdgeSubset& subgraph) {
  int n_scc = 0;
  std::vector<int> comp = vertex_scc_ids(susp.num_vertices(), susp.edges, subgraph, &n_scc);
  std::vector<EdgeSubset> parts;
  std::vector<int> part_of(n_scc, -1);
  for (int e = 0; e < susp.num_edges(); ++e) {
    if (!subgraph[e]) continue;
    const SuspEdge& ed = susp.edges[e];
    if (comp[ed.src] != comp[ed.dst]) continue;
    int c = comp[ed.src];
    if (part_of[c] == -1) {
      part_of[c] = static_cast<int>(parts.size());
      parts.emplace_back(susp.num_edges(), 0);
    }
    parts[part_of[c]][e] = 1;
  }
  return parts;
}

MarkovSuspension build_suspension(std::vector<std::string> vertex_names,
                                  std::vector<SuspEdge> edges, SuspensionOptions options) {
  MarkovSuspension susp;
  susp.vertex_names = std::move(vertex_names);
  susp.edges = std::move(edges);
  susp.options = options;

  if (susp.edges.empty())
    throw Error(ErrorCode::NotStronglyConnected, "graph has no edges");
  for (const auto& e : susp.edges) {
    if (e.src < 0 || e.src >= susp.num_vertices() || e.dst < 0 || e.dst >= susp.num_vertices())
      throw Error(ErrorCode::ConfigError, "edge endpoint out of range");
    if (!(e.roof > 0))
      throw Error(ErrorCode::NonpositiveRoof, "roof must be positive, got " + format_double(e.roof));
    if (e.roof < options.roof_floor)
      throw Error(ErrorCode::NonpositiveRoof,
                  "roof " + format_double(e.roof) + " below configured floor " +
                      format_double(options.roof_floor));
    if (e.expansion < 0)
      throw Error(ErrorCode::ConfigError, "expansion weight must be nonnegative");
    if (e.flat && e.expansion != 0)
      throw Error(ErrorCode::ExpansionOnFlat, "flat edge carries nonzero expansion weight");
  }
  if (!subgraph_strongly_connected(susp, susp.all_edges()))
    throw Error(ErrorCode::NotStronglyConnected, "graph is not strongly connected");
  // every vertex must sit on some edge (no isolated vertices in a suspension)
  {
    std::vector<char> touched(susp.num_vertices(), 0);
    for (const auto& e : susp.edges) touched[e.src] = touched[e.dst] = 1;
    for (int v = 0; v < susp.num_vertices(); ++v)
      if (!touched[v])
        throw Error(ErrorCode::NotStronglyConnected,
                    "isolated vertex " + susp.vertex_names[v]);
  }

  EdgeSubset flat = susp.flat_edges();
  bool any_flat = std::count(flat.begin(), flat.end(), 1) > 0;
  if (any_flat) {
    if (!subgraph_has_cycle(susp, flat))
      throw Error(ErrorCode::NoCycle, "flat subgraph is nonempty but carries no cycle");
    double flat_growth = subgraph_growth_rate(susp, flat);
    double whole_growth = transfer_pressure(susp, susp.all_edges(), nullptr);
    // transfer pressure here plays the role of an exact bounded census: the
    // growth rates of flat and full cycle counts are the zero-potential
    // pressures of the respective subgraphs.
    if (!(flat_growth < whole_growth - options.growth_gap_margin))
      throw Error(ErrorCode::NoGrowthGap,
                  "flat subgraph growth " + format_double(flat_growth) +
                      " does not sit below whole-graph growth " + format_double(whole_growth));
  }
  return susp;
}

MarkovSuspension parse_suspension(std::istream& in, SuspensionOptions options) {
  std::vector<std::string> names;
  std::map<std::string, int> ids;
  std::vector<SuspEdge> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string src, dst;
    if (!(ls >> src)) continue;  // blank
    double roof, pot, expn;
    int flat;
    if (!(ls >> dst >> roof >> pot >> expn >> flat))
      throw Error(ErrorCode::ConfigError,
                  "graph line " + std::to_string(lineno) + ": expected `src dst roof potential expansion flat_flag`");
    for (const std::string* tok : {&src, &dst})
      if (!ids.count(*tok)) {
        ids[*tok] = static_cast<int>(names.size());
        names.push_back(*tok);
      }
    SuspEdge e;
    e.src = ids[src];
    e.dst = ids[dst];
    e.roof = roof;
    e.potential = pot;
    e.expansion = expn;
    e.flat = flat != 0;
    edges.push_back(e);
  }
  return build_suspension(std::move(names), std::move(edges), options);
}

MarkovSuspension load_suspension(const std::string& path, SuspensionOptions options) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot open graph file " + path);
  return parse_suspension(f, options);
}

void serialize_suspension(const MarkovSuspension& susp, std::ostream& out) {
  out << "# src dst roof potential expansion flat_flag\n";
  for (const auto& e : susp.edges)
    out << susp.vertex_names[e.src] << ' ' << susp.vertex_names[e.dst] << ' '
        << format_double(e.roof) << ' ' << format_double(e.potential) << ' '
        << format_double(e.expansion) << ' ' << (e.flat ? 1 : 0) << '\n';
}

PeriodicCycle make_cycle(const MarkovSuspension& susp, std::span<const int> word) {
  PeriodicCycle c;
  // canonical least rotation
  std::vector<int> best(word.begin(), word.end());
  std::vector<int> rot(word.begin(), word.end());
  for (std::size_t r = 1; r < word.size(); ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  c.edge_word = best;
  bool all_flat = true;
  double expn = 0;
  for (int e : c.edge_word) {
    c.length += susp.edges[e].roof;
    c.potential_integral += susp.edges[e].potential;
    expn += susp.edges[e].expansion;
    if (!susp.edges[e].flat) all_flat = false;
  }
  c.lyapunov = expn / c.length;
  c.regular = !all_flat;
  // primitive iff the word is not a proper power
  c.primitive = true;
  std::size_t n = c.edge_word.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool power = true;
    for (std::size_t i = d; i < n && power; ++i)
      if (c.edge_word[i] != c.edge_word[i % d]) power = false;
    if (power) {
      c.primitive = false;
      break;
    }
  }
  return c;
}

std::uint64_t enumerate_primitive_cycles(const MarkovSuspension& susp, double length_max,
                                         const CycleVisitor& visit, EnumerateOptions opts) {
  const int m = susp.num_edges();
  EdgeSubset all;
  const EdgeSubset* subset = opts.subset;
  if (!subset) {
    all = susp.all_edges();
    subset = &all;
  }
  // out-edges by vertex, ascending edge index
  std::vector<std::vector<int>> out(susp.num_vertices());
  for (int e = 0; e < m; ++e)
    if ((*subset)[e]) out[susp.edges[e].src].push_back(e);

  const std::size_t n_aux = opts.aux_weights.size();
  std::vector<double> aux(n_aux, 0.0);
  std::vector<int> word;
  std::uint64_t emitted = 0;

  // Lyndon-word DFS: a cycle word is visited exactly once, as its strictly
  // least rotation, which is a Lyndon word over the edge-index alphabet.
  // `period` tracks the standard incremental Lyndon prefix period.
  struct Node {
    std::size_t next;   // next out-edge position to try
    int period;
    double length;
    int non_flat;
  };

  for (int e0 = 0; e0 < m; ++e0) {
    if (!(*subset)[e0]) continue;
    if (susp.edges[e0].roof >= length_max) continue;
    const int home = susp.edges[e0].src;
    word.assign(1, e0);
    for (std::size_t a = 0; a < n_aux; ++a) aux[a] = (*opts.aux_weights[a])[e0];
    std::vector<Node> stack{{0, 1, susp.edges[e0].roof, susp.edges[e0].flat ? 0 : 1}};
    while (!stack.empty()) {
      Node& nd = stack.back();
      int cur = susp.edges[word.back()].dst;
      if (nd.next == 0 && cur == home) {
        // closed path; emit iff the word is Lyndon (period == length)
        if (nd.period == static_cast<int>(word.size())) {
          CycleView view;
          view.edges = std::span<const int>(word.data(), word.size());
          view.length = nd.length;
          view.aux_sums = std::span<const double>(aux.data(), aux.size());
          view.all_flat = nd.non_flat == 0;
          visit(view);
          if (++emitted > opts.budget)
            throw Error(ErrorCode::BudgetExceeded,
                        "cycle budget exceeded, partial count " + std::to_string(emitted - 1));
        }
      }
      bool descended = false;
      const auto& cand = out[cur];
      while (nd.next < cand.size()) {
        int e = cand[nd.next++];
        if (e < e0) continue;  // Lyndon words start at their least letter
        double nl = nd.length + susp.edges[e].roof;
        if (!(nl < length_max)) continue;
        int i = static_cast<int>(word.size());
        int c = word[i - nd.period];
        if (e < c) continue;  // not a prefix of any Lyndon word
        int np = (e == c) ? nd.period : i + 1;
        word.push_back(e);
        for (std::size_t a = 0; a < n_aux; ++a) aux[a] += (*opts.aux_weights[a])[e];
        stack.push_back({0, np, nl, nd.non_flat + (susp.edges[e].flat ? 0 : 1)});
        descended = true;
        break;
      }
      if (!descended) {
        int e = word.back();
        for (std::size_t a = 0; a < n_aux; ++a) aux[a] -= (*opts.aux_weights[a])[e];
        word.pop_back();
        stack.pop_back();
      }
    }
  }
  return emitted;
}

std::vector<PeriodicCycle> collect_primitive_cycles(const MarkovSuspension& susp,
                                                    double length_max) {
  std::vector<PeriodicCycle> cycles;
  std::vector<double> pot = susp.potential_vector();
  std::vector<double> expn = susp.expansion_vector();
  EnumerateOptions opts;
  opts.aux_weights = {&pot, &expn};
  opts.budget = susp.options.cycle_budget;
  enumerate_primitive_cycles(
      susp, length_max,
      [&](const CycleView& v) {
        PeriodicCycle c;
        c.edge_word.assign(v.edges.begin(), v.edges.end());
        c.length = v.length;
        c.potential_integral = v.aux_sums[0];
        c.lyapunov = v.aux_sums[1] / v.length;
        c.regular = !v.all_flat;
        cycles.push_back(std::move(c));
      },
      opts);
  return cycles;
}

namespace {

// log of the spectral radius of M(s), overflow-safe via exponent shifting
double log_spectral_radius(const MarkovSuspension& susp, const EdgeSubset& subgraph,
                           const std::vector<double>& pot, const std::vector<int>& vindex,
                           int n_support, double s) {
  double shift = kNegInf;
  for (int e = 0; e < susp.num_edges(); ++e)
    if (subgraph[e]) shift = std::max(shift, pot[e] - s * susp.edges[e].roof);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_support, n_support);
  for (int e = 0; e < susp.num_edges(); ++e) {
    if (!subgraph[e]) continue;
    const SuspEdge& ed = susp.edges[e];
    M(vindex[ed.src], vindex[ed.dst]) += std::exp(pot[e] - s * ed.roof - shift);
  }
  Eigen::VectorXcd ev = M.eigenvalues();
  double rho = 0;
  for (int i = 0; i < ev.size(); ++i) rho = std::max(rho, std::abs(ev[i]));
  return shift + std::log(rho);
}

}  // namespace

double transfer_pressure(const MarkovSuspension& susp, const EdgeSubset& subgraph,
                         const std::vector<double>* potential, double tol) {
  bool any = std::count(subgraph.begin(), subgraph.end(), 1) > 0;
  if (!any) throw Error(ErrorCode::EmptySubgraph, "transfer pressure of empty subgraph");
  if (!subgraph_strongly_connected(susp, subgraph))
    throw Error(ErrorCode::NotStronglyConnected, "subgraph not strongly connected on its support");
  std::vector<double> pot = potential ? *potential : susp.potential_vector();
  if (static_cast<int>(pot.size()) != susp.num_edges())
    throw Error(ErrorCode::ConfigError, "potential vector size mismatch");
  std::vector<int> vindex(susp.num_vertices(), -1);
  int n_support = 0;
  for (int e = 0; e < susp.num_edges(); ++e)
    if (subgraph[e])
      for (int v : {susp.edges[e].src, susp.edges[e].dst})
        if (vindex[v] == -1) vindex[v] = n_support++;

  auto log_rho = [&](double s) {
    return log_spectral_radius(susp, subgraph, pot, vindex, n_support, s);
  };
  // bracket the root of log rho(s) = 0 (strictly decreasing in s)
  double lo = 0, hi = 0, step = 1.0;
  int attempts = 0;
  while (log_rho(lo) <= 0) {
    lo -= step;
    step *= 2;
    if (++attempts > 80)
      throw Error(ErrorCode::BisectionBracketFailure,
                  "no lower bracket after " + std::to_string(attempts) + " expansions");
  }
  step = 1.0;
  attempts = 0;
  while (log_rho(hi) >= 0) {
    hi += step;
    step *= 2;
    if (++attempts > 80)
      throw Error(ErrorCode::BisectionBracketFailure,
                  "no upper bracket after " + std::to_string(attempts) + " expansions");
  }
  return bisect([&](double s) { return log_rho(s) > 0; }, lo, hi, tol);
}

double subgraph_growth_rate(const MarkovSuspension& susp, const EdgeSubset& subgraph) {
  std::vector<double> zero(susp.num_edges(), 0.0);
  double best = kNegInf;
  for (const EdgeSubset& part : edge_scc_decomposition(susp, subgraph))
    best = std::max(best, transfer_pressure(susp, part, &zero));
  return best;
}

double extreme_time_average(const MarkovSuspension& susp, const EdgeSubset& subgraph,
                            ExtremeSense sense, const std::vector<double>* potential,
                            double tol) {
  bool any = std::count(subgraph.begin(), subgraph.end(), 1) > 0;
  if (!any) throw Error(ErrorCode::EmptySubgraph, "extreme time average of empty subgraph");
  if (!subgraph_has_cycle(susp, subgraph))
    throw Error(ErrorCode::NoCycle, "subgraph carries no cycle");
  std::vector<double> pot = potential ? *potential : susp.potential_vector();
  if (sense == ExtremeSense::Min) {
    std::vector<double> neg(pot.size());
    for (std::size_t e = 0; e < pot.size(); ++e) neg[e] = -pot[e];
    return -extreme_time_average(susp, subgraph, ExtremeSense::Max, &neg, tol);
  }
  // max ratio cycle via bisection over lambda on the positive-cycle predicate
  double rmin = 1e300, rmax = -1e300;
  for (int e = 0; e < susp.num_edges(); ++e)
    if (subgraph[e]) {
      double r = pot[e] / susp.edges[e].roof;
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
  const int nv = susp.num_vertices();
  std::vector<double> dist(nv);
  auto has_positive_cycle = [&](double lambda) {
    std::fill(dist.begin(), dist.end(), 0.0);
    bool improved = false;
    for (int round = 0; round <= nv; ++round) {
      improved = false;
      for (int e = 0; e < susp.num_edges(); ++e) {
        if (!subgraph[e]) continue;
        const SuspEdge& ed = susp.edges[e];
        double w = pot[e] - lambda * ed.roof;
        if (dist[ed.src] + w > dist[ed.dst]) {
          dist[ed.dst] = dist[ed.src] + w;
          improved = true;
        }
      }
      if (!improved) return false;
    }
    return improved;
  };
  double lo = rmin - 1.0, hi = rmax + 1.0;
  return bisect(has_positive_cycle, lo, hi, tol);
}

Epsilon0Report epsilon0_estimate(const MarkovSuspension& susp, double length_max,
                                 const GrowthFitOptions& fit_opts) {
  EdgeSubset flat = susp.flat_edges();
  if (std::count(flat.begin(), flat.end(), 1) == 0)
    throw Error(ErrorCode::FlatEmpty, "flat subgraph is empty");
  if (std::count(flat.begin(), flat.end(), 1) == susp.num_edges())
    throw Error(ErrorCode::FlatEmpty, "flat subgraph equals the whole graph: no regular cycles");

  WindowAccumulator reg_acc(length_max), flat_acc(length_max);
  EnumerateOptions opts;
  opts.budget = susp.options.cycle_budget;
  enumerate_primitive_cycles(
      susp, length_max,
      [&](const CycleView& v) {
        if (v.all_flat)
          flat_acc.add(v.length, 0.0);
        else
          reg_acc.add(v.length, 0.0);
      },
      opts);

  Epsilon0Report rep;
  rep.regular_windows = reg_acc.windows();
  rep.flat_windows = flat_acc.windows();

  // Growth of the cumulative ratio #R(T)/#H(T).  When the flat count
  // saturates (finitely many flat classes) the ratio inherits the e^{eT}/T
  // shape of the regular count and the corrected fit applies; when both
  // grow exponentially the 1/T corrections cancel and the raw slope is the
  // right readout.
  std::vector<GrowthWindow> ratio;
  double cum_r = 0, cum_h = 0;
  std::vector<double> flat_cum;
  for (std::size_t i = 0; i < rep.regular_windows.size(); ++i) {
    cum_r += rep.regular_windows[i].count;
    cum_h += rep.flat_windows[i].count;
    flat_cum.push_back(cum_h);
    GrowthWindow w;
    w.t_upper = rep.regular_windows[i].t_upper;
    w.count = rep.regular_windows[i].count + rep.flat_windows[i].count;
    w.log_sum = (cum_r > 0 && cum_h > 0) ? std::log(cum_r) - std::log(cum_h) : kNegInf;
    ratio.push_back(w);
  }
  rep.ratio_fit = fit_growth(ratio, fit_opts);
  int k = rep.ratio_fit.fit_windows;
  bool flat_saturated = flat_cum.size() >= static_cast<std::size_t>(k) && k >= 1 &&
                        flat_cum.back() == flat_cum[flat_cum.size() - k];
  if (!flat_saturated) rep.ratio_fit.slope = rep.ratio_fit.slope_raw;

  std::vector<double> zero(susp.num_edges(), 0.0);
  rep.oracle_gap =
      transfer_pressure(susp, susp.all_edges(), &zero) - subgraph_growth_rate(susp, flat);
  return rep;
}

}  // namespace ranklab
