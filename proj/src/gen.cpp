#include "owlbench/gen.hpp"

#include <set>
#include <stdexcept>
#include <vector>

#include "owlbench/rng.hpp"

namespace owlbench {

GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "erdos_renyi") return GraphKind::kErdosRenyi;
  if (s == "barabasi_albert") return GraphKind::kBarabasiAlbert;
  if (s == "path") return GraphKind::kPath;
  throw std::invalid_argument("unknown graph kind: " + s);
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kErdosRenyi: return "erdos_renyi";
    case GraphKind::kBarabasiAlbert: return "barabasi_albert";
    case GraphKind::kPath: return "path";
  }
  return "?";
}

namespace {

Graph gen_erdos_renyi(int n, double p, uint64_t seed) {
  if (p < 0 || p > 1) throw std::invalid_argument("erdos_renyi: p outside [0,1]");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_double() < p) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph gen_barabasi_albert(int n, int m_attach, uint64_t seed) {
  if (m_attach < 1) throw std::invalid_argument("barabasi_albert: m_attach must be >= 1");
  if (n <= m_attach) throw std::invalid_argument("barabasi_albert: need n > m_attach");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  // endpoints holds every edge endpoint; sampling it uniformly is sampling
  // nodes proportional to degree
  std::vector<NodeId> endpoints;
  for (int u = 0; u < m_attach; ++u)
    for (int v = u + 1; v < m_attach; ++v) {
      edges.push_back({u, v});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  for (int v = m_attach; v < n; ++v) {
    std::set<NodeId> targets;
    while (static_cast<int>(targets.size()) < m_attach)
      targets.insert(endpoints[rng.next_below(endpoints.size())]);
    for (NodeId t : targets) {
      edges.push_back({t, v});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, edges);
}

Graph gen_path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, edges);
}

}  // namespace

Graph generate(const GraphGenParams& params) {
  switch (params.kind) {
    case GraphKind::kErdosRenyi: return gen_erdos_renyi(params.n, params.p, params.seed);
    case GraphKind::kBarabasiAlbert:
      return gen_barabasi_albert(params.n, params.m_attach, params.seed);
    case GraphKind::kPath: return gen_path(params.n);
  }
  throw std::invalid_argument("generate: unknown kind");
}

}  // namespace owlbench
