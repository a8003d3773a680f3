#include "threshmatch/flow.hpp"

#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "threshmatch/rng.hpp"

using namespace threshmatch;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

FlowArc find_arc(const FlowNetwork& net, int from, int to) {
  for (const auto& arc : net.arcs)
    if (arc.from == from && arc.to == to) return arc;
  FAIL("arc ", from, " -> ", to, " not found");
  return {};
}

}  // namespace

TEST_CASE("smallest component has the four expected arcs") {
  FlowNetwork net = build_network({1}, {1}, {{{0.5}}});
  CHECK(net.required_flow == 1);
  CHECK(net.node_count == 5);  // s, t, v_0, z_0, chain node
  REQUIRE(net.arcs.size() == 4);
  int chain = 4;
  CHECK(find_arc(net, net.source, net.agent_node(0)).capacity == 1);
  CHECK(find_arc(net, net.agent_node(0), chain).cost == doctest::Approx(-0.5));
  CHECK(find_arc(net, chain, net.item_node(0)).cost == doctest::Approx(0.0));
  CHECK(find_arc(net, net.item_node(0), net.sink).capacity == 1);

  FlowSolution sol = solve_min_cost(net);
  CHECK(sol.total_cost == doctest::Approx(-0.5).epsilon(1e-12));
  for (long long f : sol.arc_flow) CHECK(f == 1);
  Allocation alloc = extract_allocation(net, sol);
  CHECK(alloc.x == std::vector<std::vector<int>>{{1}});
  CHECK(alloc.maximal);
}

TEST_CASE("two-copy chain carries the labelled costs and assigns both copies") {
  FlowNetwork net = build_network({2}, {2}, {{{0.6, 0.4}}});
  // Chain nodes are 4 and 5.
  CHECK(find_arc(net, net.agent_node(0), 4).cost == doctest::Approx(-0.6));
  CHECK(find_arc(net, net.agent_node(0), 4).capacity == 2);
  CHECK(find_arc(net, 4, 5).cost == doctest::Approx(0.2));
  CHECK(find_arc(net, 4, 5).capacity == 1);
  CHECK(find_arc(net, 4, net.item_node(0)).cost == doctest::Approx(0.0));
  CHECK(find_arc(net, 5, net.item_node(0)).cost == doctest::Approx(0.0));

  FlowSolution sol = solve_min_cost(net);
  CHECK(sol.total_cost == doctest::Approx(-1.0).epsilon(1e-12));
  Allocation alloc = extract_allocation(net, sol);
  CHECK(alloc.x[0][0] == 2);
}

TEST_CASE("cost telescoping: a unit exiting at level l accrues -V_l") {
  // One agent, one item, three copies; force exit levels by capacity.
  std::vector<double> v = {0.5, 0.3, 0.2};
  FlowNetwork net = build_network({3}, {3}, {{v}});
  FlowSolution sol = solve_min_cost(net);
  // All three units route through; total cost telescopes to -(v1+v2+v3).
  CHECK(sol.total_cost == doctest::Approx(-(v[0] + v[1] + v[2])).epsilon(1e-12));

  // A single unit exits at level 1 and accrues exactly -v1.
  FlowNetwork single = build_network({1}, {3}, {{v}});
  FlowSolution sol1 = solve_min_cost(single);
  CHECK(sol1.total_cost == doctest::Approx(-v[0]).epsilon(1e-12));
}

TEST_CASE("forbidden copy levels drop their arcs") {
  const double inf = kNegInf;
  FlowNetwork limited = build_network({2}, {2}, {{{0.6, inf}}});
  // Only the level-1 chain node exists: entry, one exit, plus s/t arcs.
  CHECK(limited.arcs.size() == 4);
  CHECK(limited.exit_arc[0][0].size() == 1);

  FlowNetwork full = build_network({2}, {2}, {{{0.6, 0.4}}});
  CHECK(full.arcs.size() == 6);

  CHECK_THROWS_AS(build_network({2}, {2}, {{{inf, 0.4}}}), std::invalid_argument);
}

TEST_CASE("monotonicity warnings flag increasing values") {
  std::vector<MonotonicityViolation> warnings;
  build_network({2}, {2}, {{{0.2, 0.6}}}, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].agent == 0);
  CHECK(warnings[0].item == 0);
  CHECK(warnings[0].copy == 1);
}

TEST_CASE("two agents share a two-copy item when values favor both") {
  FlowNetwork net = build_network({1, 1}, {2}, {{{0.9}}, {{0.8}}});
  FlowSolution sol = solve_min_cost(net);
  Allocation alloc = extract_allocation(net, sol);
  CHECK(alloc.x == std::vector<std::vector<int>>{{1}, {1}});
  CHECK(alloc.maximal);
  CHECK(sol.total_cost == doctest::Approx(-1.7).epsilon(1e-12));
}

TEST_CASE("min-cost flow equals negated maximum welfare on random instances") {
  Rng rng(97);
  for (int round = 0; round < 500; ++round) {
    int n = 1 + static_cast<int>(rng.below(4));
    int m = 1 + static_cast<int>(rng.below(4));
    std::vector<int> C(n), M(m);
    for (int& c : C) c = 1 + static_cast<int>(rng.below(3));
    for (int& s : M) s = 1 + static_cast<int>(rng.below(3));
    // Keep the assignable total within desk scale.
    long long total_c = 0, total_m = 0;
    for (int c : C) total_c += c;
    for (int s : M) total_m += s;
    if (std::min(total_c, total_m) > 8) {
      --round;
      continue;
    }
    std::vector<std::vector<std::vector<double>>> V(n);
    for (int i = 0; i < n; ++i) {
      V[i].resize(m);
      for (int a = 0; a < m; ++a) {
        int depth = std::min(C[i], M[a]);
        V[i][a].resize(depth);
        for (double& v : V[i][a]) v = rng.unit();
        std::sort(V[i][a].begin(), V[i][a].end(), std::greater<>());
      }
    }
    FlowNetwork net = build_network(C, M, V);
    FlowSolution sol = solve_min_cost(net);
    double expected = testoracle::brute_force_max_value_welfare(C, M, V);
    CHECK(-sol.total_cost == doctest::Approx(expected).epsilon(1e-7));

    // Integral flows and a consistent extracted allocation.
    Allocation alloc = extract_allocation(net, sol);
    CHECK(alloc.maximal);
    long long assigned = 0;
    for (const auto& row : alloc.x)
      for (int v : row) {
        CHECK(v >= 0);
        assigned += v;
      }
    CHECK(assigned == net.required_flow);
  }
}

TEST_CASE("network dump lists every arc as from/to/capacity/cost") {
  FlowNetwork net = build_network({1}, {1}, {{{0.5}}});
  std::string dump = net.dump();
  CHECK(dump.find("0 2 1 0\n") != std::string::npos);   // s -> v_0
  CHECK(dump.find("2 4 1 -0.5\n") != std::string::npos);  // entry arc
  int lines = 0;
  for (char c : dump)
    if (c == '\n') ++lines;
  CHECK(lines == static_cast<int>(net.arcs.size()));
}

TEST_CASE("infeasible hand-built network is reported") {
  FlowNetwork net = build_network({1}, {1}, {{{0.5}}});
  net.required_flow = 2;  // more than the arcs can carry
  CHECK_THROWS_AS(solve_min_cost(net), std::runtime_error);
}
