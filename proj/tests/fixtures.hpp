#pragma once

#include "owlbench/graph.hpp"

// The 10-node graph used by the max-flow / shortest-path / cycle-check prompt
// examples.
inline owlbench::Graph figure_graph() {
  return owlbench::Graph(
      10, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 8}, {1, 5}, {1, 6}, {1, 7},
           {1, 8}, {1, 9}, {2, 5}, {3, 5}, {3, 7}, {3, 8}, {3, 9}, {4, 6}, {4, 7}, {5, 6},
           {5, 7}, {5, 8}, {6, 9}, {8, 9}});
}
