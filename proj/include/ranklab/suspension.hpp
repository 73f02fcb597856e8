// Markov suspension testbed: a finite directed multigraph with per-edge
// roof (crossing time), potential integral, and expansion (log-Jacobian)
// weights, plus a designated flat subgraph carrying the zero-expansion
// dynamics.  Periodic orbits of the suspension flow are cycles of the graph
// with length = summed roof; this module enumerates them exactly and solves
// the transfer-operator equations that make every pressure quantity of the
// flow computable in closed form.

#ifndef RANKLAB_SUSPENSION_HPP
#define RANKLAB_SUSPENSION_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ranklab/errors.hpp"
#include "ranklab/growth.hpp"

namespace ranklab {

struct SuspEdge {
  int src = 0;
  int dst = 0;
  double roof = 1.0;        // time to cross the edge, > 0
  double potential = 0.0;   // integral of the ambient potential over the edge
  double expansion = 0.0;   // log-expansion picked up crossing the edge, >= 0
  bool flat = false;        // member of the flat (higher-rank analog) subgraph
};

using EdgeSubset = std::vector<std::uint8_t>;  // one flag per edge index

struct SuspensionOptions {
  double roof_floor = 0.1;
  double growth_gap_margin = 1e-9;
  std::uint64_t cycle_budget = 100000000;  // enumeration cap
};

class MarkovSuspension {
 public:
  std::vector<std::string> vertex_names;
  std::vector<SuspEdge> edges;
  SuspensionOptions options;

  int num_vertices() const { return static_cast<int>(vertex_names.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  EdgeSubset all_edges() const { return EdgeSubset(edges.size(), 1); }
  EdgeSubset flat_edges() const;
  EdgeSubset regular_edges() const;  // complement of the flat subgraph

  // per-edge view of the built-in potential / expansion weights
  std::vector<double> potential_vector() const;
  std::vector<double> expansion_vector() const;

  std::uint64_t content_hash() const;  // over the canonical serialization
};

// Validates every type invariant (strong connectivity, positive roofs above
// the floor, zero expansion on flat edges, flat cycle existence, and the
// growth gap between the flat subgraph and the whole graph) and returns the
// suspension.  The growth gap is checked exactly through the zero-potential
// transfer pressure of each strongly connected flat component.
MarkovSuspension build_suspension(std::vector<std::string> vertex_names,
                                  std::vector<SuspEdge> edges, SuspensionOptions options = {});

// Plain-text graph format, one edge per line:
//   src dst roof potential expansion flat_flag
// '#' starts a comment; vertex names are bare tokens; flag is 0/1.
MarkovSuspension parse_suspension(std::istream& in, SuspensionOptions options = {});
MarkovSuspension load_suspension(const std::string& path, SuspensionOptions options = {});
void serialize_suspension(const MarkovSuspension& susp, std::ostream& out);

// One primitive periodic orbit of the suspension flow, reported as the
// lexicographically least rotation of its edge-index word.
struct PeriodicCycle {
  std::vector<int> edge_word;
  double length = 0.0;             // sum of roofs
  double potential_integral = 0.0; // sum of built-in potential weights
  double lyapunov = 0.0;           // sum of expansion weights / length
  bool regular = false;            // false iff every edge is flat
  bool primitive = true;
};

PeriodicCycle make_cycle(const MarkovSuspension& susp, std::span<const int> word);

// Streaming view handed to cycle visitors: the edge word plus running sums
// of the roof and of each registered auxiliary per-edge weight vector.
struct CycleView {
  std::span<const int> edges;
  double length = 0.0;
  std::span<const double> aux_sums;
  bool all_flat = false;
};

using CycleVisitor = std::function<void(const CycleView&)>;

struct EnumerateOptions {
  const EdgeSubset* subset = nullptr;                    // restrict to these edges
  std::vector<const std::vector<double>*> aux_weights;   // running sums to maintain
  std::uint64_t budget = 100000000;
};

// Enumerates exactly the primitive cycles of length < length_max, once per
// rotation class, in lexicographic order of the canonical word.  Returns the
// number of cycles emitted; throws BudgetExceeded past the cap (the partial
// count rides in the message).
std::uint64_t enumerate_primitive_cycles(const MarkovSuspension& susp, double length_max,
                                         const CycleVisitor& visit, EnumerateOptions opts = {});

// Convenience: materialize the cycles (desk-scale graphs only).
std::vector<PeriodicCycle> collect_primitive_cycles(const MarkovSuspension& susp,
                                                    double length_max);

// The unique s with spectral radius of  M(s)_{ij} = sum_e exp(pot_e - s roof_e)
// equal to 1, over the given subgraph: the exact topological pressure of the
// suspension flow restricted to that subgraph.  potential may be null to use
// the built-in weights.
double transfer_pressure(const MarkovSuspension& susp, const EdgeSubset& subgraph,
                         const std::vector<double>* potential = nullptr, double tol = 1e-12);

// Growth rate of cycle counts in a possibly non-strongly-connected edge set:
// max of the zero-potential transfer pressure over its strongly connected
// components, -inf when the set carries no cycle.
double subgraph_growth_rate(const MarkovSuspension& susp, const EdgeSubset& subgraph);

enum class ExtremeSense { Min, Max };

// Extreme of (sum potential)/(sum roof) over cycles inside the subgraph,
// solved by bisection on the parametric positive-cycle problem.  For the
// locally constant potentials of this testbed this is the exact extreme of
// the potential average over invariant measures carried by the subgraph.
double extreme_time_average(const MarkovSuspension& susp, const EdgeSubset& subgraph,
                            ExtremeSense sense, const std::vector<double>* potential = nullptr,
                            double tol = 1e-11);

struct Epsilon0Report {
  std::vector<GrowthWindow> regular_windows;  // windowed counts, log_sum = log count
  std::vector<GrowthWindow> flat_windows;
  GrowthRateFit ratio_fit;   // growth of cumulative count ratio #R(T)/#H(T)
  double oracle_gap = 0.0;   // transfer(whole,0) - flat subgraph growth
};

// Windowed census of regular vs flat-confined primitive cycles and the
// fitted growth rate of their ratio, with the exact transfer-oracle gap.
Epsilon0Report epsilon0_estimate(const MarkovSuspension& susp, double length_max,
                                 const GrowthFitOptions& fit_opts = {});

// Strongly connected components of the subgraph (edge-induced); returns one
// EdgeSubset per component that contains at least one edge.
std::vector<EdgeSubset> edge_scc_decomposition(const MarkovSuspension& susp,
                                               const EdgeSubset& subgraph);

bool subgraph_strongly_connected(const MarkovSuspension& susp, const EdgeSubset& subgraph);
bool subgraph_has_cycle(const MarkovSuspension& susp, const EdgeSubset& subgraph);

}  // namespace ranklab

#endif
