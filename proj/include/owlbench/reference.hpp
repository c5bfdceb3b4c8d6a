#pragma once

#include <optional>

#include "owlbench/graph.hpp"

namespace owlbench {

// Deliberately naive solvers, kept algorithmically independent of the
// production oracles so the two can cross-check each other. Exponential
// pieces are only meant for small n.
namespace reference {

// All C(n,3) triples.
int count_triangles_brute(const Graph& g);
// DFS over simple cycles through v.
bool node_on_cycle_brute(const Graph& g, NodeId v);
// Union-find connectivity.
bool reachable_union_find(const Graph& g, NodeId s, NodeId t);
// Floyd-Warshall.
std::optional<int> shortest_path_floyd(const Graph& g, NodeId s, NodeId t);
// Minimum s-t edge cut by enumerating all edge subsets (max-flow = min-cut).
int max_flow_min_cut_brute(const Graph& g, NodeId s, NodeId t);

}  // namespace reference
}  // namespace owlbench
