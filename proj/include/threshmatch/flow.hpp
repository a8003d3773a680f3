#pragma once

#include <string>
#include <vector>

#include "threshmatch/core.hpp"

namespace threshmatch {

struct FlowArc {
  int from = 0, to = 0;
  long long capacity = 0;
  double cost = 0;
};

// The parametric min-cost flow instance G(C, M, V). Per (i, a) the component
// is a chain v_{i,a,1} -> ... -> v_{i,a,L}: the entry arc v_i -> v_{i,a,1}
// costs -V_{i,a,1}, the chain arc into level j+1 costs V_{i,a,j} - V_{i,a,j+1}
// with capacity M_a - j, and every level has a unit exit arc to v_a at cost 0,
// so a unit leaving the chain at level l accrues exactly -V_{i,a,l}.
struct FlowNetwork {
  int node_count = 0;
  int source = 0, sink = 0;
  long long required_flow = 0;  // F = min{sum C, sum M}
  std::vector<FlowArc> arcs;

  // Layout bookkeeping for extraction and tests.
  int n = 0, m = 0;
  std::vector<std::vector<int>> entry_arc;               // arc id of v_i -> v_{i,a,1}, -1 if absent
  std::vector<std::vector<std::vector<int>>> exit_arc;   // arc id of v_{i,a,j} -> v_a
  bool truncated = false;  // some copy levels were forbidden and dropped

  int agent_node(int i) const { return 2 + i; }
  int item_node(int a) const { return 2 + n + a; }

  // Plain-text arc list "from to capacity cost", for differential testing
  // against external min-cost-flow tools.
  std::string dump() const;
};

struct MonotonicityViolation {
  int agent = 0, item = 0, copy = 0;  // V increases from copy to copy+1
};

// Builds G(C, M, V). Values[i][a] holds the per-copy values for the pair
// (lengths up to min(C_i, M_a)); -infinity entries forbid that copy level and
// the corresponding arcs are omitted (forbidden levels must form a suffix).
// When `warnings` is given, pairs whose finite values increase in the copy
// index are recorded there.
FlowNetwork build_network(const std::vector<int>& capacities, const std::vector<int>& supplies,
                          const std::vector<std::vector<std::vector<double>>>& values,
                          std::vector<MonotonicityViolation>* warnings = nullptr);

struct FlowSolution {
  std::vector<long long> arc_flow;  // parallel to FlowNetwork::arcs
  double total_cost = 0;
  long long flow_value = 0;
};

// Exact integral min-cost flow of value F: Bellman-Ford initial potentials,
// then successive shortest augmenting paths with reduced costs. Copy limits
// can lower the attainable flow below F; that shortfall is reported through
// flow_value. On untruncated networks a shortfall means the instance itself
// is infeasible and throws.
FlowSolution solve_min_cost(const FlowNetwork& net);

// x[i][a] = flow on the entry arc of the (i, a) component.
Allocation extract_allocation(const FlowNetwork& net, const FlowSolution& sol);

}  // namespace threshmatch
