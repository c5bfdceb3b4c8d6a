#include "owlbench/oracles.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "owlbench/rng.hpp"

namespace owlbench {

TaskKind task_kind_from_string(const std::string& s) {
  if (s == "triangle_count") return TaskKind::kTriangleCount;
  if (s == "cycle_check") return TaskKind::kCycleCheck;
  if (s == "reachability") return TaskKind::kReachability;
  if (s == "shortest_path") return TaskKind::kShortestPath;
  if (s == "max_flow") return TaskKind::kMaxFlow;
  if (s == "node_classification") return TaskKind::kNodeClassification;
  throw std::invalid_argument("unknown task kind: " + s);
}

std::string to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kTriangleCount: return "triangle_count";
    case TaskKind::kCycleCheck: return "cycle_check";
    case TaskKind::kReachability: return "reachability";
    case TaskKind::kShortestPath: return "shortest_path";
    case TaskKind::kMaxFlow: return "max_flow";
    case TaskKind::kNodeClassification: return "node_classification";
  }
  return "?";
}

std::string Answer::to_text() const {
  switch (kind) {
    case Kind::kBool: return b ? "Yes" : "No";
    case Kind::kInt: return std::to_string(i);
    case Kind::kNoPath: return "inf";
    case Kind::kLabel: return label;
  }
  return "?";
}

int count_triangles(const Graph& g) {
  int count = 0;
  for (const auto& [u, v] : g.edges())
    for (NodeId w : g.neighbors(u))
      if (w > v && g.has_edge(v, w)) ++count;
  return count;
}

namespace {

// Tarjan bridge finding, iterative to handle deep paths.
std::vector<Edge> find_bridges(const Graph& g) {
  int n = g.num_nodes();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> bridges;
  int timer = 0;
  struct Frame {
    NodeId v;
    NodeId parent;
    size_t next_nbr;
    bool skipped_parent_edge;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0, false}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = g.neighbors(f.v);
      if (f.next_nbr < nbrs.size()) {
        NodeId u = nbrs[f.next_nbr++];
        if (u == f.parent && !f.skipped_parent_edge) {
          // one parent edge ignored; parallel edges cannot occur (simple graph)
          f.skipped_parent_edge = true;
          continue;
        }
        if (disc[u] == -1) {
          disc[u] = low[u] = timer++;
          stack.push_back({u, f.v, 0, false});
        } else {
          low[f.v] = std::min(low[f.v], disc[u]);
        }
      } else {
        NodeId v = f.v, parent = f.parent;
        stack.pop_back();
        if (parent != -1) {
          low[parent] = std::min(low[parent], low[v]);
          if (low[v] > disc[parent])
            bridges.push_back({std::min(parent, v), std::max(parent, v)});
        }
      }
    }
  }
  return bridges;
}

void check_pair(const Graph& g, NodeId s, NodeId t, const char* op) {
  if (s < 0 || t < 0 || s >= g.num_nodes() || t >= g.num_nodes())
    throw std::invalid_argument(std::string(op) + ": node out of range");
  if (s == t) throw std::invalid_argument(std::string(op) + ": source equals target");
}

}  // namespace

bool node_on_cycle(const Graph& g, NodeId v) {
  if (v < 0 || v >= g.num_nodes()) throw std::invalid_argument("node_on_cycle: node out of range");
  auto bridges = find_bridges(g);
  std::sort(bridges.begin(), bridges.end());
  for (NodeId u : g.neighbors(v)) {
    Edge e{std::min(v, u), std::max(v, u)};
    if (!std::binary_search(bridges.begin(), bridges.end(), e)) return true;
  }
  return false;
}

bool reachable(const Graph& g, NodeId s, NodeId t) {
  check_pair(g, s, t, "reachable");
  auto p = distance_profile(g, s, 0);
  return p.dist[t] != kUnreachable;
}

std::optional<int> shortest_path_len(const Graph& g, NodeId s, NodeId t) {
  check_pair(g, s, t, "shortest_path_len");
  auto p = distance_profile(g, s, 0);
  if (p.dist[t] == kUnreachable) return std::nullopt;
  return p.dist[t];
}

int max_flow_unit(const Graph& g, NodeId s, NodeId t) {
  check_pair(g, s, t, "max_flow_unit");
  int n = g.num_nodes();
  // residual[u][v] over antiparallel unit arcs
  std::vector<std::vector<int>> residual(n, std::vector<int>(n, 0));
  for (const auto& [u, v] : g.edges()) residual[u][v] = residual[v][u] = 1;
  int flow = 0;
  for (;;) {
    std::vector<NodeId> parent(n, -1);
    parent[s] = s;
    std::queue<NodeId> q;
    q.push(s);
    while (!q.empty() && parent[t] == -1) {
      NodeId v = q.front();
      q.pop();
      for (NodeId u = 0; u < n; ++u)
        if (residual[v][u] > 0 && parent[u] == -1) {
          parent[u] = v;
          q.push(u);
        }
    }
    if (parent[t] == -1) break;
    for (NodeId v = t; v != s; v = parent[v]) {
      residual[parent[v]][v] -= 1;
      residual[v][parent[v]] += 1;
    }
    ++flow;
  }
  return flow;
}

Answer solve(const Graph& g, TaskKind kind, const Query& query) {
  switch (kind) {
    case TaskKind::kTriangleCount:
      return Answer::of_int(count_triangles(g));
    case TaskKind::kCycleCheck:
      return Answer::of_bool(node_on_cycle(g, query.node));
    case TaskKind::kReachability:
      return Answer::of_bool(reachable(g, query.source, query.target));
    case TaskKind::kShortestPath: {
      auto d = shortest_path_len(g, query.source, query.target);
      return d ? Answer::of_int(*d) : Answer::no_path();
    }
    case TaskKind::kMaxFlow:
      return Answer::of_int(max_flow_unit(g, query.source, query.target));
    case TaskKind::kNodeClassification:
      throw std::invalid_argument("solve: node_classification truth comes from node labels");
  }
  throw std::invalid_argument("solve: unknown task kind");
}

std::vector<std::pair<int, int>> default_distance_bins() {
  return {{10, 15}, {16, 25}, {26, 40}, {41, -1}};
}

namespace {

constexpr int kRetryBudget = 1000;

bool needs_pair(TaskKind kind) {
  return kind == TaskKind::kReachability || kind == TaskKind::kShortestPath ||
         kind == TaskKind::kMaxFlow;
}

int graph_diameter(const Graph& g) {
  int diam = 0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    auto p = distance_profile(g, v, 0);
    for (int d : p.dist)
      if (d == kUnreachable) return -1;  // disconnected: undefined
    diam = std::max(diam, p.eccentricity);
  }
  return diam;
}

}  // namespace

std::vector<TaskInstance> make_instances(const std::vector<SourceGraph>& graphs, TaskKind kind,
                                         int count, const InstanceConstraints& constraints,
                                         uint64_t seed) {
  if (graphs.empty()) throw std::invalid_argument("make_instances: no graphs supplied");
  std::vector<TaskInstance> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const SourceGraph& src = graphs[i % graphs.size()];
    const Graph& g = src.graph;
    SplitMix64 rng = SplitMix64::stream(seed, static_cast<uint64_t>(i));

    std::optional<int> diameter;
    if (constraints.min_diameter) {
      diameter = graph_diameter(g);
      if (*diameter < *constraints.min_diameter)
        throw std::runtime_error("make_instances: min_diameter=" +
                                 std::to_string(*constraints.min_diameter) +
                                 " unsatisfiable on a graph with diameter " +
                                 std::to_string(*diameter));
    }

    TaskInstance inst;
    inst.graph = g;
    inst.kind = kind;
    inst.meta = src.meta;
    inst.meta.diameter = diameter;
    inst.id = to_string(kind) + "-" + std::to_string(i);

    if (kind == TaskKind::kTriangleCount) {
      inst.query = Query::none();
      inst.truth = solve(g, kind, inst.query);
    } else if (kind == TaskKind::kCycleCheck) {
      inst.query = Query::for_node(static_cast<NodeId>(rng.next_below(g.num_nodes())));
      inst.truth = solve(g, kind, inst.query);
    } else if (kind == TaskKind::kNodeClassification) {
      if (src.labels.size() != static_cast<size_t>(g.num_nodes()))
        throw std::invalid_argument("make_instances: node_classification requires node labels");
      NodeId target = static_cast<NodeId>(rng.next_below(g.num_nodes()));
      inst.query = Query::for_node(target);
      inst.truth = Answer::of_label(src.labels[target]);
      inst.node_labels = src.labels;
    } else {
      if (g.num_nodes() < 2)
        throw std::invalid_argument("make_instances: pair task needs at least two nodes");
      bool found = false;
      for (int attempt = 0; attempt < kRetryBudget && !found; ++attempt) {
        NodeId s = static_cast<NodeId>(rng.next_below(g.num_nodes()));
        NodeId t = static_cast<NodeId>(rng.next_below(g.num_nodes()));
        if (s == t) continue;
        auto d = shortest_path_len(g, s, t);
        if (constraints.require_connected_pair && !d) continue;
        if (!constraints.distance_bins.empty()) {
          if (!d) continue;
          bool in_bin = false;
          for (const auto& [lo, hi] : constraints.distance_bins)
            if (*d >= lo && (hi < 0 || *d <= hi)) in_bin = true;
          if (!in_bin) continue;
        }
        inst.query = Query::for_pair(s, t);
        inst.truth = solve(g, kind, inst.query);
        inst.meta.distance = d;
        found = true;
      }
      if (!found)
        throw std::runtime_error(
            "make_instances: no query satisfying the distance/connectivity constraints after " +
            std::to_string(kRetryBudget) + " attempts");
    }
    if (!needs_pair(kind)) inst.meta.distance.reset();
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace owlbench
