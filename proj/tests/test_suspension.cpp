#include "ranklab/suspension.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "testbeds.hpp"

using namespace ranklab;

namespace {
const double kLogGolden = std::log((1.0 + std::sqrt(5.0)) / 2.0);

std::map<int, int> counts_by_word_length(const std::vector<PeriodicCycle>& cycles) {
  std::map<int, int> n;
  for (const auto& c : cycles) n[static_cast<int>(c.edge_word.size())]++;
  return n;
}
}  // namespace

TEST_CASE("build_suspension validates invariants") {
  CHECK_NOTHROW(testbeds::rank_one_4edge());
  CHECK_NOTHROW(testbeds::rank_one_golden());

  // negative roof on a->b
  CHECK_THROWS_AS(build_suspension({"a", "b"}, {{0, 0, 1, 0, 1, false},
                                                {0, 1, -1, 0, 1, false},
                                                {1, 0, 1, 0, 1, false},
                                                {1, 1, 1, 0, 0, true}}),
                  Error);
  // roof below the floor
  CHECK_THROWS_AS(build_suspension({"o"}, {{0, 0, 0.01, 0, 0, false}}), Error);
  // not strongly connected
  CHECK_THROWS_AS(build_suspension({"a", "b"}, {{0, 0, 1, 0, 1, false}, {0, 1, 1, 0, 1, false}}),
                  Error);
  // expansion on a flat edge
  CHECK_THROWS_AS(build_suspension({"o"}, {{0, 0, 1, 0, 0.5, true}, {0, 0, 1, 0, 1, false}}),
                  Error);
  // flat 2-shift decorated by a very slow regular detour: whole-graph growth
  // exceeds the flat growth by far less than the configured margin
  try {
    build_suspension({"u", "v"}, {{0, 0, 1, 0, 0, true},
                                  {0, 0, 1, 0, 0, true},
                                  {0, 1, 20, 0, 1, false},
                                  {1, 0, 20, 0, 1, false}});
    FAIL("expected NoGrowthGap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoGrowthGap);
  }
  // flat subgraph without a cycle
  try {
    build_suspension({"a", "b"},
                     {{0, 0, 1, 0, 1, false}, {0, 1, 1, 0, 0, true}, {1, 0, 1, 0, 1, false}});
    FAIL("expected NoCycle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCycle);
  }
}

TEST_CASE("full 2-shift cycle counts match the necklace oracle") {
  auto s = testbeds::full_2shift();
  auto cycles = collect_primitive_cycles(s, 4.0);
  auto n = counts_by_word_length(cycles);
  // frozen from (1/n) sum_{d|n} mu(d) 2^{n/d}
  CHECK(n[1] == 2);
  CHECK(n[2] == 1);
  CHECK(n[3] == 2);
  for (int len = 1; len <= 3; ++len)
    CHECK(static_cast<std::uint64_t>(n[len]) == oracles::primitive_cycle_count(s, len));
  // growth rate log 2 through the transfer oracle
  CHECK(transfer_pressure(s, s.all_edges()) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("single loop has exactly one primitive cycle") {
  auto s = testbeds::single_loop();
  auto cycles = collect_primitive_cycles(s, 10.0);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].length == doctest::Approx(1.0));
}

TEST_CASE("enumeration agrees with the exhaustive census oracle") {
  auto check_graph = [](const MarkovSuspension& s, double length_max, int max_edges) {
    auto expected = oracles::census_primitive_cycles(s, max_edges, length_max);
    std::set<std::vector<int>> got;
    std::vector<std::vector<int>> order;
    enumerate_primitive_cycles(s, length_max, [&](const CycleView& v) {
      got.insert(std::vector<int>(v.edges.begin(), v.edges.end()));
      order.push_back(std::vector<int>(v.edges.begin(), v.edges.end()));
    });
    CHECK(got == expected);
    CHECK(got.size() == order.size());  // no duplicates
  };
  check_graph(testbeds::rank_one_4edge(), 3.0, 3);
  check_graph(testbeds::rank_one_4edge(), 6.0, 6);
  check_graph(testbeds::rank_one_golden(), 8.0, 8);
  check_graph(testbeds::full_2shift(), 7.0, 7);

  // the 4-edge graph below length 3: the two loops and the 2-cycle
  auto cycles = collect_primitive_cycles(testbeds::rank_one_4edge(), 3.0);
  CHECK(cycles.size() == 3);
}

TEST_CASE("primitivity identity: closed walks decompose over primitive cycles") {
  for (const auto& s : {testbeds::rank_one_4edge(), testbeds::rank_one_golden()}) {
    auto cycles = collect_primitive_cycles(s, 13.0);
    auto counts = counts_by_word_length(cycles);
    for (int n = 1; n <= 12; ++n) {
      std::uint64_t sum = 0;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) sum += static_cast<std::uint64_t>(d) * counts[d];
      CHECK(sum == oracles::closed_walks(s, n));
    }
  }
}

TEST_CASE("transfer pressure: closed forms and the shift identity") {
  auto s2 = testbeds::full_2shift();
  CHECK(transfer_pressure(s2, s2.all_edges()) == doctest::Approx(std::log(2.0)).epsilon(1e-10));

  auto loop = testbeds::single_loop(2.0, 0.0);
  CHECK(transfer_pressure(loop, loop.all_edges()) == doctest::Approx(0.0).epsilon(1e-9));

  auto golden = testbeds::rank_one_golden();
  CHECK(transfer_pressure(golden, golden.all_edges()) ==
        doctest::Approx(kLogGolden).epsilon(1e-9));

  // P(phi + c*roof) = P(phi) + c for c in {-1, 0.5, 2}
  for (const auto& s : {testbeds::rank_one_4edge(), testbeds::shift_with_flat_appendix()}) {
    std::vector<double> base = s.potential_vector();
    double p0 = transfer_pressure(s, s.all_edges(), &base);
    for (double c : {-1.0, 0.5, 2.0}) {
      std::vector<double> shifted = base;
      for (int e = 0; e < s.num_edges(); ++e) shifted[e] += c * s.edges[e].roof;
      double pc = transfer_pressure(s, s.all_edges(), &shifted);
      CHECK(pc - p0 == doctest::Approx(c).epsilon(1e-9));
    }
  }

  CHECK_THROWS_AS(transfer_pressure(s2, EdgeSubset(s2.num_edges(), 0)), Error);
}

TEST_CASE("extreme time average: examples and brute-force agreement") {
  // two self-loops with potential 1 and 3
  auto s = build_suspension({"o"}, {{0, 0, 1, 1.0, 1, false}, {0, 0, 1, 3.0, 1, false}});
  CHECK(extreme_time_average(s, s.all_edges(), ExtremeSense::Max) ==
        doctest::Approx(3.0).epsilon(1e-10));
  CHECK(extreme_time_average(s, s.all_edges(), ExtremeSense::Min) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // zero potential
  std::vector<double> zero(s.num_edges(), 0.0);
  CHECK(std::abs(extreme_time_average(s, s.all_edges(), ExtremeSense::Max, &zero)) <= 1e-10);

  // flat self-loop with potential p, roof r
  auto g = build_suspension({"a", "b"}, {{0, 1, 1, 0, 1, false},
                                         {1, 0, 1, 0, 1, false},
                                         {1, 1, 2.0, 1.4, 0, true}});
  CHECK(extreme_time_average(g, g.flat_edges(), ExtremeSense::Max) ==
        doctest::Approx(0.7).epsilon(1e-10));

  // randomized graphs vs exhaustive cycles of <= 8 edges
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> pot(-2.0, 2.0);
  std::uniform_real_distribution<double> roof(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    int nv = 2 + static_cast<int>(rng() % 3);
    std::vector<SuspEdge> edges;
    std::vector<std::string> names;
    for (int v = 0; v < nv; ++v) names.push_back("v" + std::to_string(v));
    // ring to guarantee strong connectivity, then random extras
    for (int v = 0; v < nv; ++v)
      edges.push_back({v, (v + 1) % nv, roof(rng), pot(rng), 0.0, false});
    int extras = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < extras; ++k)
      edges.push_back({static_cast<int>(rng() % nv), static_cast<int>(rng() % nv), roof(rng),
                       pot(rng), 0.0, false});
    auto rs = build_suspension(names, edges);
    for (auto sense : {ExtremeSense::Max, ExtremeSense::Min}) {
      double got = extreme_time_average(rs, rs.all_edges(), sense);
      double want =
          oracles::brute_ratio_extreme(rs, rs.all_edges(), 8, sense == ExtremeSense::Max);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }

  CHECK_THROWS_AS(extreme_time_average(s, EdgeSubset(s.num_edges(), 0), ExtremeSense::Max), Error);
}

TEST_CASE("epsilon0 estimate: fits track the exact transfer gap") {
  auto golden = testbeds::rank_one_golden();
  auto rep = epsilon0_estimate(golden, 16.0);
  CHECK(rep.oracle_gap == doctest::Approx(kLogGolden).epsilon(1e-9));
  CHECK(std::abs(rep.ratio_fit.slope - rep.oracle_gap) <= 0.05);
  CHECK(rep.oracle_gap > 0);

  auto appendix = testbeds::shift_with_flat_appendix();
  auto rep2 = epsilon0_estimate(appendix, 16.0);
  std::vector<double> zero(appendix.num_edges(), 0.0);
  double whole = transfer_pressure(appendix, appendix.all_edges(), &zero);
  CHECK(rep2.oracle_gap == doctest::Approx(whole).epsilon(1e-9));  // flat growth is zero
  CHECK(rep2.oracle_gap == doctest::Approx(std::log(2.0)).epsilon(0.05));
  CHECK(std::abs(rep2.ratio_fit.slope - rep2.oracle_gap) <= 0.05);

  auto s4 = testbeds::rank_one_4edge();
  auto rep3 = epsilon0_estimate(s4, 16.0);
  CHECK(rep3.oracle_gap == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(std::abs(rep3.ratio_fit.slope - rep3.oracle_gap) <= 0.05);

  // flat subgraph equal to the whole graph is rejected as FlatEmpty complement
  MarkovSuspension degenerate;
  degenerate.vertex_names = {"o"};
  degenerate.edges = {{0, 0, 1, 0, 0, true}};
  try {
    epsilon0_estimate(degenerate, 8.0);
    FAIL("expected FlatEmpty");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FlatEmpty);
  }
}

TEST_CASE("flat cycles carry zero lyapunov exponent") {
  auto s = testbeds::rank_one_golden();
  for (const auto& c : collect_primitive_cycles(s, 10.0))
    if (!c.regular) CHECK(c.lyapunov == 0.0);
}

TEST_CASE("graph file round-trips decimal literals") {
  auto s = testbeds::shift_with_flat_appendix();
  s.edges[2].potential = 0.1 + 0.2;  // a value with a long binary tail
  std::ostringstream out;
  serialize_suspension(s, out);
  std::istringstream in(out.str());
  auto t = parse_suspension(in);
  REQUIRE(t.num_edges() == s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    CHECK(t.edges[e].roof == s.edges[e].roof);
    CHECK(t.edges[e].potential == s.edges[e].potential);
    CHECK(t.edges[e].expansion == s.edges[e].expansion);
    CHECK(t.edges[e].flat == s.edges[e].flat);
  }
  CHECK(t.content_hash() == s.content_hash());
}

TEST_CASE("enumeration budget reports the partial count") {
  auto s = testbeds::full_2shift();
  EnumerateOptions opts;
  opts.budget = 5;
  try {
    enumerate_primitive_cycles(s, 12.0, [](const CycleView&) {}, opts);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
}
