#include <stdexcept>
#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "owlbench/graph.hpp"
#include "owlbench/rng.hpp"

using namespace owlbench;

TEST_CASE("graph construction validates and canonicalizes") {
  Graph p3(3, {{0, 1}, {1, 2}});
  CHECK(p3.num_nodes() == 3);
  CHECK(p3.num_edges() == 2);

  // reversed duplicates collapse
  Graph e(2, {{0, 1}, {1, 0}});
  CHECK(e.num_edges() == 1);

  CHECK_THROWS_AS(Graph(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(-1, {}), std::invalid_argument);
}

TEST_CASE("adjacency is symmetric and sorted") {
  Graph g(4, {{2, 0}, {0, 1}, {3, 0}});
  CHECK(g.neighbors(0) == std::vector<NodeId>{1, 2, 3});
  for (int v = 0; v < 4; ++v)
    for (NodeId u : g.neighbors(v)) CHECK(g.has_edge(u, v));
}

TEST_CASE("graph json round-trip keeps canonical edge order") {
  Graph g(4, {{3, 1}, {0, 2}, {1, 0}});
  Graph back = Graph::from_json(g.to_json());
  CHECK(back.edges() == g.edges());
  CHECK(g.to_json() == back.to_json());
}

TEST_CASE("distance profile on paths, triangles, disconnected graphs") {
  Graph p3(3, {{0, 1}, {1, 2}});
  auto p = distance_profile(p3, 0, 2);
  CHECK(p.dist == std::vector<int>{0, 1, 2});
  CHECK(p.shells == std::vector<int>{1, 1, 1});
  CHECK(p.eccentricity == 2);

  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(distance_profile(k3, 0, 2).shells == std::vector<int>{1, 2, 0});

  Graph two(4, {{0, 1}, {2, 3}});
  auto q = distance_profile(two, 0, 3);
  CHECK(q.dist[2] == kUnreachable);
  CHECK(q.dist[3] == kUnreachable);
  CHECK(q.shells == std::vector<int>{1, 1, 0, 0});

  CHECK_THROWS_AS(distance_profile(p3, 5, 2), std::invalid_argument);
}

TEST_CASE("truncated connectivity") {
  CHECK(truncated_connectivity({1, 2, 0}, {1, 1, 1}) == doctest::Approx(3));
  CHECK(truncated_connectivity({1, 1, 1}, {1, 0.5, 0.25}) == doctest::Approx(1.75));
  CHECK_THROWS_AS(truncated_connectivity({1, 1}, {0.5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(truncated_connectivity({1, 1}, {1, 0}), std::invalid_argument);
}

TEST_CASE("permute relabels edges") {
  Graph p3(3, {{0, 1}, {1, 2}});
  Graph r = permute(p3, {2, 1, 0});
  CHECK(r.edges() == std::vector<Edge>{{0, 1}, {1, 2}});  // canonical order of {2,1},{1,0}
  CHECK(permute(p3, {0, 1, 2}).edges() == p3.edges());
  CHECK_THROWS_AS(permute(p3, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("permute composed with its inverse is the identity") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(10));
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.next_double() < 0.4) edges.push_back({u, v});
    Graph g(n, edges);
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i + 1 < n; ++i)
      std::swap(perm[i], perm[i + rng.next_below(n - i)]);
    std::vector<NodeId> inv(n);
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    CHECK(permute(permute(g, perm), inv).edges() == g.edges());
  }
}

TEST_CASE("shell sums cover the component when depth >= eccentricity") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(12));
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.next_double() < 0.25) edges.push_back({u, v});
    Graph g(n, edges);
    auto p = distance_profile(g, 0, n);
    int reachable_count = 0;
    for (int d : p.dist)
      if (d != kUnreachable) ++reachable_count;
    CHECK(std::accumulate(p.shells.begin(), p.shells.end(), 0) == reachable_count);
    // edge endpoints in the same component differ by at most one level
    for (const auto& [u, v] : g.edges())
      if (p.dist[u] != kUnreachable && p.dist[v] != kUnreachable)
        CHECK(std::abs(p.dist[u] - p.dist[v]) <= 1);
  }
}
