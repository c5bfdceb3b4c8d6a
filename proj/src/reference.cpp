#include "owlbench/reference.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace owlbench::reference {

int count_triangles_brute(const Graph& g) {
  int n = g.num_nodes(), count = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) ++count;
  return count;
}

namespace {

bool cycle_dfs(const Graph& g, NodeId start, NodeId v, std::vector<bool>& on_path, int depth) {
  for (NodeId u : g.neighbors(v)) {
    if (u == start && depth >= 2) return true;
    if (!on_path[u] && u != start) {
      on_path[u] = true;
      if (cycle_dfs(g, start, u, on_path, depth + 1)) return true;
      on_path[u] = false;
    }
  }
  return false;
}

}  // namespace

bool node_on_cycle_brute(const Graph& g, NodeId v) {
  std::vector<bool> on_path(g.num_nodes(), false);
  return cycle_dfs(g, v, v, on_path, 0);
}

bool reachable_union_find(const Graph& g, NodeId s, NodeId t) {
  std::vector<int> parent(g.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : g.edges()) parent[find(u)] = find(v);
  return find(s) == find(t);
}

std::optional<int> shortest_path_floyd(const Graph& g, NodeId s, NodeId t) {
  int n = g.num_nodes();
  const int kInf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  if (d[s][t] >= kInf) return std::nullopt;
  return d[s][t];
}

int max_flow_min_cut_brute(const Graph& g, NodeId s, NodeId t) {
  const auto& edges = g.edges();
  int m = static_cast<int>(edges.size());
  if (m > 24) throw std::invalid_argument("max_flow_min_cut_brute: too many edges");
  int best = m;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    int removed = __builtin_popcount(mask);
    if (removed >= best) continue;
    std::vector<Edge> kept;
    for (int i = 0; i < m; ++i)
      if (!(mask & (1u << i))) kept.push_back(edges[i]);
    Graph h(g.num_nodes(), kept);
    if (!reachable_union_find(h, s, t)) best = removed;
  }
  return best;
}

}  // namespace owlbench::reference
