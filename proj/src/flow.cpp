#include "threshmatch/flow.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace threshmatch {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kReducedCostSlack = 1e-7;
}  // namespace

std::string FlowNetwork::dump() const {
  std::ostringstream os;
  for (const auto& arc : arcs) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", arc.cost);
    os << arc.from << ' ' << arc.to << ' ' << arc.capacity << ' ' << buf << '\n';
  }
  return os.str();
}

FlowNetwork build_network(const std::vector<int>& capacities, const std::vector<int>& supplies,
                          const std::vector<std::vector<std::vector<double>>>& values,
                          std::vector<MonotonicityViolation>* warnings) {
  const int n = static_cast<int>(capacities.size());
  const int m = static_cast<int>(supplies.size());
  if (n < 1 || m < 1) throw std::invalid_argument("network needs at least one agent and item");
  for (int c : capacities)
    if (c < 1) throw std::invalid_argument("capacities must be integers >= 1");
  for (int s : supplies)
    if (s < 1) throw std::invalid_argument("supplies must be integers >= 1");
  if (static_cast<int>(values.size()) != n)
    throw std::invalid_argument("value matrix must have n rows");

  FlowNetwork net;
  net.n = n;
  net.m = m;
  net.source = 0;
  net.sink = 1;
  net.node_count = 2 + n + m;
  net.entry_arc.assign(n, std::vector<int>(m, -1));
  net.exit_arc.assign(n, std::vector<std::vector<int>>(m));

  long long total_c = 0, total_m = 0;
  for (int i = 0; i < n; ++i) {
    total_c += capacities[i];
    net.arcs.push_back({net.source, net.agent_node(i), capacities[i], 0.0});
  }
  for (int a = 0; a < m; ++a) {
    total_m += supplies[a];
    net.arcs.push_back({net.item_node(a), net.sink, supplies[a], 0.0});
  }
  net.required_flow = std::min(total_c, total_m);

  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(values[i].size()) != m)
      throw std::invalid_argument("value matrix must have m columns");
    for (int a = 0; a < m; ++a) {
      const auto& v = values[i][a];
      const int depth = std::min({static_cast<int>(v.size()), capacities[i], supplies[a]});
      // Forbidden (-inf) levels must be a suffix; the arcs for them are
      // simply not built.
      int usable = 0;
      while (usable < depth && std::isfinite(v[usable])) ++usable;
      for (int j = usable; j < depth; ++j) {
        if (std::isfinite(v[j]))
          throw std::invalid_argument("forbidden copy levels of pair (" + std::to_string(i) +
                                      "," + std::to_string(a) + ") must form a suffix");
      }
      if (usable < depth) net.truncated = true;
      if (warnings != nullptr) {
        for (int j = 1; j < usable; ++j) {
          if (v[j] > v[j - 1] + kBoundaryTol)
            warnings->push_back({i, a, j});
        }
      }
      if (usable == 0) continue;

      int chain_base = net.node_count;  // node of v_{i,a,j} is chain_base + j - 1
      net.node_count += usable;
      net.entry_arc[i][a] = static_cast<int>(net.arcs.size());
      net.arcs.push_back({net.agent_node(i), chain_base, static_cast<long long>(supplies[a]),
                          -v[0]});
      for (int j = 1; j < usable; ++j) {
        net.arcs.push_back({chain_base + j - 1, chain_base + j,
                            static_cast<long long>(supplies[a] - j), v[j - 1] - v[j]});
      }
      for (int j = 0; j < usable; ++j) {
        net.exit_arc[i][a].push_back(static_cast<int>(net.arcs.size()));
        net.arcs.push_back({chain_base + j, net.item_node(a), 1, 0.0});
      }
    }
  }
  return net;
}

namespace {

struct ResidualArc {
  int to = 0;
  long long cap = 0;
  double cost = 0;
  int rev = 0;       // index of the paired reverse arc in graph[to]
  int orig = -1;     // original arc index for forward arcs
};

}  // namespace

FlowSolution solve_min_cost(const FlowNetwork& net) {
  const int nodes = net.node_count;
  std::vector<std::vector<ResidualArc>> graph(nodes);
  for (size_t idx = 0; idx < net.arcs.size(); ++idx) {
    const auto& arc = net.arcs[idx];
    graph[arc.from].push_back({arc.to, arc.capacity, arc.cost,
                               static_cast<int>(graph[arc.to].size()), static_cast<int>(idx)});
    graph[arc.to].push_back({arc.from, 0, -arc.cost,
                             static_cast<int>(graph[arc.from].size()) - 1, -1});
  }

  // Initial potentials by Bellman-Ford (the network has negative arc costs).
  std::vector<double> potential(nodes, kInf);
  potential[net.source] = 0;
  for (int round = 0; round < nodes; ++round) {
    bool changed = false;
    for (int u = 0; u < nodes; ++u) {
      if (potential[u] == kInf) continue;
      for (const auto& arc : graph[u]) {
        if (arc.cap <= 0) continue;
        double cand = potential[u] + arc.cost;
        if (cand < potential[arc.to] - 1e-15) {
          potential[arc.to] = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
    if (round == nodes - 1)
      throw std::logic_error("negative cycle in flow network");
  }

  long long pushed = 0;
  std::vector<double> dist(nodes);
  std::vector<int> prev_node(nodes), prev_arc(nodes);
  while (pushed < net.required_flow) {
    // Dijkstra on reduced costs; ties resolved by node index for determinism.
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(prev_node.begin(), prev_node.end(), -1);
    dist[net.source] = 0;
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0.0, net.source});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u] + 1e-15) continue;
      for (size_t k = 0; k < graph[u].size(); ++k) {
        const auto& arc = graph[u][k];
        if (arc.cap <= 0 || potential[arc.to] == kInf) continue;
        double reduced = arc.cost + potential[u] - potential[arc.to];
        if (reduced < -kReducedCostSlack)
          throw std::logic_error("reduced cost drifted negative in min-cost flow");
        if (reduced < 0) reduced = 0;
        double cand = dist[u] + reduced;
        if (cand < dist[arc.to] - 1e-15) {
          dist[arc.to] = cand;
          prev_node[arc.to] = u;
          prev_arc[arc.to] = static_cast<int>(k);
          heap.push({cand, arc.to});
        }
      }
    }
    if (dist[net.sink] == kInf) {
      if (!net.truncated)
        throw std::runtime_error("flow network cannot carry the required flow");
      break;  // limits bind: the pushed amount is the maximum flow
    }
    for (int u = 0; u < nodes; ++u) {
      if (dist[u] < kInf && potential[u] < kInf) potential[u] += dist[u];
    }
    long long bottleneck = net.required_flow - pushed;
    for (int u = net.sink; u != net.source; u = prev_node[u]) {
      bottleneck = std::min(bottleneck, graph[prev_node[u]][prev_arc[u]].cap);
    }
    for (int u = net.sink; u != net.source; u = prev_node[u]) {
      auto& fwd = graph[prev_node[u]][prev_arc[u]];
      fwd.cap -= bottleneck;
      graph[u][fwd.rev].cap += bottleneck;
    }
    pushed += bottleneck;
  }

  FlowSolution sol;
  sol.flow_value = pushed;
  sol.arc_flow.assign(net.arcs.size(), 0);
  for (int u = 0; u < nodes; ++u) {
    for (const auto& arc : graph[u]) {
      if (arc.orig >= 0) sol.arc_flow[arc.orig] = net.arcs[arc.orig].capacity - arc.cap;
    }
  }
  sol.total_cost = 0;
  for (size_t idx = 0; idx < net.arcs.size(); ++idx) {
    sol.total_cost += static_cast<double>(sol.arc_flow[idx]) * net.arcs[idx].cost;
  }
  return sol;
}

Allocation extract_allocation(const FlowNetwork& net, const FlowSolution& sol) {
  if (sol.arc_flow.size() != net.arcs.size())
    throw std::invalid_argument("solution does not match the network");
  Allocation alloc;
  alloc.x.assign(net.n, std::vector<int>(net.m, 0));
  long long total = 0;
  for (int i = 0; i < net.n; ++i) {
    for (int a = 0; a < net.m; ++a) {
      if (net.entry_arc[i][a] < 0) continue;
      long long f = sol.arc_flow[net.entry_arc[i][a]];
      alloc.x[i][a] = static_cast<int>(f);
      total += f;
    }
  }
  alloc.maximal = (total == net.required_flow);
  return alloc;
}

}  // namespace threshmatch
