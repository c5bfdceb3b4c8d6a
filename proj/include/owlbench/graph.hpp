#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace owlbench {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;  // stored with first < second

constexpr int kUnreachable = -1;  // distance sentinel, never used in arithmetic

// Undirected simple graph on nodes 0..n-1. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  // Validates endpoints, rejects self-loops, collapses duplicate and reversed
  // duplicate pairs.
  Graph(int n, const std::vector<Edge>& edges);

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  // Canonical edge order: min endpoint first, then lexicographic.
  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted ascending.
  const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }
  int degree(NodeId v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(NodeId u, NodeId v) const;

  std::string to_json() const;
  static Graph from_json(const std::string& text);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adj_;
};

struct DistanceProfile {
  NodeId source = 0;
  std::vector<int> dist;    // kUnreachable where disconnected
  std::vector<int> shells;  // shells[k] = |{u : dist[u] = k}|, k = 0..T
  int eccentricity = 0;     // max finite distance
};

DistanceProfile distance_profile(const Graph& g, NodeId source, int max_depth);

// C_T(v) = sum_k alpha_k * shells[k]; alpha must be nonincreasing positive.
double truncated_connectivity(const std::vector<int>& shells, const std::vector<double>& alpha);

// Relabels nodes through a bijection perm: node v becomes perm[v].
Graph permute(const Graph& g, const std::vector<NodeId>& perm);

}  // namespace owlbench
