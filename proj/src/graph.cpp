#include "owlbench/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace owlbench {

Graph::Graph(int n, const std::vector<Edge>& edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("graph: negative node count");
  std::set<Edge> dedup;
  for (const auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("graph: self-loop at node " + std::to_string(a));
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("graph: endpoint out of range in edge (" + std::to_string(a) +
                                  "," + std::to_string(b) + ")");
    dedup.insert({std::min(a, b), std::max(a, b)});
  }
  edges_.assign(dedup.begin(), dedup.end());
  adj_.resize(n);
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  const auto& nbrs = adj_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::string Graph::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  auto arr = nlohmann::json::array();
  for (const auto& [u, v] : edges_) arr.push_back({u, v});
  j["edges"] = arr;
  return j.dump();
}

Graph Graph::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return Graph(j.at("n").get<int>(), edges);
}

DistanceProfile distance_profile(const Graph& g, NodeId source, int max_depth) {
  if (source < 0 || source >= g.num_nodes())
    throw std::invalid_argument("distance_profile: source out of range");
  DistanceProfile p;
  p.source = source;
  p.dist.assign(g.num_nodes(), kUnreachable);
  p.shells.assign(max_depth + 1, 0);
  p.dist[source] = 0;
  std::queue<NodeId> q;
  q.push(source);
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    for (NodeId u : g.neighbors(v)) {
      if (p.dist[u] == kUnreachable) {
        p.dist[u] = p.dist[v] + 1;
        q.push(u);
      }
    }
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    int d = p.dist[v];
    if (d == kUnreachable) continue;
    p.eccentricity = std::max(p.eccentricity, d);
    if (d <= max_depth) ++p.shells[d];
  }
  return p;
}

double truncated_connectivity(const std::vector<int>& shells, const std::vector<double>& alpha) {
  if (alpha.size() != shells.size())
    throw std::invalid_argument("truncated_connectivity: weight length must match shell count");
  for (size_t k = 0; k < alpha.size(); ++k) {
    if (alpha[k] <= 0) throw std::invalid_argument("truncated_connectivity: weights must be positive");
    if (k > 0 && alpha[k] > alpha[k - 1])
      throw std::invalid_argument("truncated_connectivity: weights must be nonincreasing");
  }
  double sum = 0;
  for (size_t k = 0; k < shells.size(); ++k) sum += alpha[k] * shells[k];
  return sum;
}

Graph permute(const Graph& g, const std::vector<NodeId>& perm) {
  int n = g.num_nodes();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permute: wrong length");
  std::vector<bool> seen(n, false);
  for (NodeId p : perm) {
    if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("permute: not a bijection");
    seen[p] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const auto& [u, v] : g.edges()) edges.push_back({perm[u], perm[v]});
  return Graph(n, edges);
}

}  // namespace owlbench
