#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "owlbench/graph.hpp"

namespace owlbench {

using LabelVector = std::vector<int>;

// Full ordered-WL run. history[0] is the all-ones initialization; history[t]
// for t >= 1 holds the 0-based identifiers assigned at iteration t.
struct RefinementTrace {
  std::vector<LabelVector> history;
  // First t whose node partition equals the partition at t-1; equals the index
  // of the last executed iteration when refinement ran to stability.
  int stabilized_at = 0;

  const LabelVector& final_labels() const { return history.back(); }
  // Labels at iteration t with the fixpoint extended past stabilization
  // (label values are stationary once the partition stops changing).
  const LabelVector& at_iteration(int t) const {
    return history[std::min<size_t>(t, history.size() - 1)];
  }

  std::string to_json() const;
};

// Ordered 1-WL: message m_v = (own label, ascending neighbor-label tuple);
// unique messages sorted lexicographically (proper prefix compares smaller)
// and mapped to 0-based ids in that order. Stops when the induced partition
// repeats, or after max_iters iterations.
RefinementTrace ordered_wl(const Graph& g, int max_iters);
// max_iters defaults to n (1-WL stabilizes within n rounds).
RefinementTrace ordered_wl(const Graph& g);

// Normalized labels in [0,1]: (L_v - min) / max(1, max - min).
std::vector<double> normalize_labels(const LabelVector& labels);

// Canonical partition representative: canon[v] = smallest node with v's label.
std::vector<int> partition_of(const LabelVector& labels);

// Classic color refinement used as an independence oracle for ordered_wl.
// Returns per-iteration partitions (canonical representatives), index 0 being
// the trivial partition.
std::vector<std::vector<int>> classic_wl_partition(const Graph& g, int max_iters);

struct TheoremReport {
  long long degree_pairs_checked = 0;
  long long degree_violations = 0;
  long long dominance_pairs_checked = 0;
  long long label_dominance_violations = 0;
  long long connectivity_violations = 0;
  int graphs_checked = 0;
  int trees_checked = 0;

  bool ok() const {
    return degree_violations == 0 && label_dominance_violations == 0 &&
           connectivity_violations == 0;
  }
};

// Executable check of the label-ordering guarantees:
//  (1) deg(v) > deg(w) implies l_v^(1) > l_w^(1), on every graph;
//  (2) on trees, strict shell dominance up to depth T implies
//      l_v^(T) > l_w^(T);
//  (3) for each such pair and each nonincreasing positive alpha,
//      C_T(v) > C_T(w).
TheoremReport verify_theorem1(const std::vector<Graph>& graphs, int depth,
                              const std::vector<std::vector<double>>& alphas);

bool is_tree(const Graph& g);

}  // namespace owlbench
