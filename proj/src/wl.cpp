#include "owlbench/wl.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace owlbench {

std::string RefinementTrace::to_json() const {
  nlohmann::json j;
  j["history"] = history;
  j["stabilized_at"] = stabilized_at;
  return j.dump();
}

std::vector<int> partition_of(const LabelVector& labels) {
  std::map<int, int> rep;  // label -> smallest node carrying it
  std::vector<int> canon(labels.size());
  for (size_t v = 0; v < labels.size(); ++v)
    if (!rep.count(labels[v])) rep[labels[v]] = static_cast<int>(v);
  for (size_t v = 0; v < labels.size(); ++v) canon[v] = rep[labels[v]];
  return canon;
}

RefinementTrace ordered_wl(const Graph& g, int max_iters) {
  if (max_iters < 1) throw std::invalid_argument("ordered_wl: max_iters must be >= 1");
  int n = g.num_nodes();
  RefinementTrace trace;
  trace.history.push_back(LabelVector(n, 1));
  trace.stabilized_at = -1;
  std::vector<int> prev_part = partition_of(trace.history[0]);
  for (int t = 1; t <= max_iters; ++t) {
    const LabelVector& cur = trace.history.back();
    // message = (own label, ascending neighbor-label tuple), flattened;
    // vector operator< is exactly lexicographic with proper-prefix-smaller
    std::vector<std::vector<int>> messages(n);
    for (int v = 0; v < n; ++v) {
      auto& m = messages[v];
      m.push_back(cur[v]);
      for (NodeId u : g.neighbors(v)) m.push_back(cur[u]);
      std::sort(m.begin() + 1, m.end());
    }
    std::map<std::vector<int>, int> id;  // globally sorted unique messages
    for (const auto& m : messages) id.emplace(m, 0);
    int next = 0;
    for (auto& [msg, i] : id) i = next++;
    LabelVector labels(n);
    for (int v = 0; v < n; ++v) labels[v] = id[messages[v]];
    trace.history.push_back(std::move(labels));
    std::vector<int> part = partition_of(trace.history.back());
    if (part == prev_part) {
      trace.stabilized_at = t;
      break;
    }
    prev_part = std::move(part);
  }
  return trace;
}

RefinementTrace ordered_wl(const Graph& g) {
  return ordered_wl(g, std::max(1, g.num_nodes()));
}

std::vector<double> normalize_labels(const LabelVector& labels) {
  if (labels.empty()) throw std::invalid_argument("normalize_labels: empty label vector");
  auto [mn, mx] = std::minmax_element(labels.begin(), labels.end());
  double r = std::max(1, *mx - *mn);
  std::vector<double> out(labels.size());
  for (size_t v = 0; v < labels.size(); ++v) out[v] = (labels[v] - *mn) / r;
  return out;
}

std::vector<std::vector<int>> classic_wl_partition(const Graph& g, int max_iters) {
  if (max_iters < 1) throw std::invalid_argument("classic_wl_partition: max_iters must be >= 1");
  int n = g.num_nodes();
  LabelVector colors(n, 0);
  std::vector<std::vector<int>> partitions;
  partitions.push_back(partition_of(colors));
  for (int t = 1; t <= max_iters; ++t) {
    std::map<std::pair<int, std::vector<int>>, int> fresh;  // first-seen ids
    LabelVector next(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> nbr;
      for (NodeId u : g.neighbors(v)) nbr.push_back(colors[u]);
      std::sort(nbr.begin(), nbr.end());
      auto key = std::make_pair(colors[v], std::move(nbr));
      auto [it, inserted] = fresh.emplace(std::move(key), static_cast<int>(fresh.size()));
      next[v] = it->second;
    }
    colors = std::move(next);
    partitions.push_back(partition_of(colors));
    if (partitions[t] == partitions[t - 1]) break;
  }
  return partitions;
}

bool is_tree(const Graph& g) {
  if (g.num_nodes() == 0) return false;
  if (g.num_edges() != g.num_nodes() - 1) return false;
  auto p = distance_profile(g, 0, g.num_nodes());
  for (int d : p.dist)
    if (d == kUnreachable) return false;
  return true;
}

TheoremReport verify_theorem1(const std::vector<Graph>& graphs, int depth,
                              const std::vector<std::vector<double>>& alphas) {
  if (depth < 1) throw std::invalid_argument("verify_theorem1: depth must be >= 1");
  for (const auto& a : alphas)
    if (static_cast<int>(a.size()) != depth + 1)
      throw std::invalid_argument("verify_theorem1: each alpha must have length depth+1");
  TheoremReport report;
  for (const Graph& g : graphs) {
    int n = g.num_nodes();
    if (n == 0) continue;
    ++report.graphs_checked;
    auto trace = ordered_wl(g, std::max(depth, n));
    const LabelVector& first = trace.at_iteration(1);
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        if (g.degree(v) <= g.degree(w)) continue;
        ++report.degree_pairs_checked;
        if (first[v] <= first[w]) ++report.degree_violations;
      }
    if (!is_tree(g)) continue;
    ++report.trees_checked;
    std::vector<DistanceProfile> profiles;
    profiles.reserve(n);
    for (int v = 0; v < n; ++v) profiles.push_back(distance_profile(g, v, depth));
    const LabelVector& at_depth = trace.at_iteration(depth);
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        if (v == w) continue;
        bool dominates = true;
        for (int k = 1; k <= depth; ++k)
          if (profiles[v].shells[k] <= profiles[w].shells[k]) {
            dominates = false;
            break;
          }
        if (!dominates) continue;
        ++report.dominance_pairs_checked;
        if (at_depth[v] <= at_depth[w]) ++report.label_dominance_violations;
        for (const auto& alpha : alphas) {
          double cv = truncated_connectivity(profiles[v].shells, alpha);
          double cw = truncated_connectivity(profiles[w].shells, alpha);
          if (cv <= cw) ++report.connectivity_violations;
        }
      }
  }
  return report;
}

}  // namespace owlbench
