#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "owlbench/graph.hpp"

namespace owlbench {

enum class TaskKind {
  kTriangleCount,
  kCycleCheck,
  kReachability,
  kShortestPath,
  kMaxFlow,
  kNodeClassification,
};

TaskKind task_kind_from_string(const std::string& s);
std::string to_string(TaskKind kind);

// Whole graph, single node, or source-target pair.
struct Query {
  enum class Kind { kNone, kNode, kPair } kind = Kind::kNone;
  NodeId node = 0;
  NodeId source = 0;
  NodeId target = 0;

  static Query none() { return {}; }
  static Query for_node(NodeId v) { return {Kind::kNode, v, 0, 0}; }
  static Query for_pair(NodeId s, NodeId t) { return {Kind::kPair, 0, s, t}; }
};

struct Answer {
  enum class Kind { kBool, kInt, kNoPath, kLabel } kind = Kind::kInt;
  bool b = false;
  long long i = 0;
  std::string label;

  static Answer of_bool(bool v) { return {Kind::kBool, v, 0, {}}; }
  static Answer of_int(long long v) { return {Kind::kInt, false, v, {}}; }
  static Answer no_path() { return {Kind::kNoPath, false, 0, {}}; }
  static Answer of_label(std::string v) { return {Kind::kLabel, false, 0, std::move(v)}; }

  bool operator==(const Answer&) const = default;
  std::string to_text() const;
};

// --- exact solvers ---

int count_triangles(const Graph& g);
// True iff v lies on a simple cycle: v has an incident non-bridge edge.
bool node_on_cycle(const Graph& g, NodeId v);
bool reachable(const Graph& g, NodeId s, NodeId t);
// BFS hop count; nullopt when disconnected.
std::optional<int> shortest_path_len(const Graph& g, NodeId s, NodeId t);
// Max s-t flow with unit capacity per undirected edge (antiparallel unit
// arcs); equals the number of edge-disjoint s-t paths. Edmonds-Karp.
int max_flow_unit(const Graph& g, NodeId s, NodeId t);

// Oracle dispatch for the algorithmic tasks (node_classification truth comes
// from supplied labels instead).
Answer solve(const Graph& g, TaskKind kind, const Query& query);

// --- instance construction ---

struct InstanceMeta {
  std::string graph_type;
  int n = 0;
  uint64_t seed = 0;
  std::optional<int> distance;  // source-target BFS distance, pair tasks
  std::optional<int> diameter;
  std::map<std::string, std::string> extra;
};

struct TaskInstance {
  std::string id;
  Graph graph;
  TaskKind kind = TaskKind::kTriangleCount;
  Query query;
  Answer truth;
  InstanceMeta meta;
  std::vector<std::string> node_labels;  // node_classification only

  std::string to_jsonl() const;
  static TaskInstance from_jsonl(const std::string& line);
};

struct InstanceConstraints {
  // Inclusive [lo, hi] distance bins; hi < 0 means unbounded.
  std::vector<std::pair<int, int>> distance_bins;
  std::optional<int> min_diameter;
  bool require_connected_pair = false;
};

// The four source-target distance ranges used for long-range slicing.
std::vector<std::pair<int, int>> default_distance_bins();

struct SourceGraph {
  Graph graph;
  InstanceMeta meta;
  std::vector<std::string> labels;  // required for node_classification
};

// Samples queries uniformly under the constraints (retry budget 1000 per
// instance), filling truth from the oracle. Graphs are cycled through in
// order; instance i draws randomness from stream (seed, i). For
// node_classification the truth is the target node's supplied label.
std::vector<TaskInstance> make_instances(const std::vector<SourceGraph>& graphs, TaskKind kind,
                                         int count, const InstanceConstraints& constraints,
                                         uint64_t seed);

}  // namespace owlbench
