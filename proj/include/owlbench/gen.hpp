#pragma once

#include <cstdint>
#include <string>

#include "owlbench/graph.hpp"

namespace owlbench {

enum class GraphKind { kErdosRenyi, kBarabasiAlbert, kPath };

GraphKind graph_kind_from_string(const std::string& s);
std::string to_string(GraphKind kind);

struct GraphGenParams {
  GraphKind kind = GraphKind::kErdosRenyi;
  int n = 0;
  double p = 0.0;     // ER edge probability
  int m_attach = 4;   // BA edges per arriving node
  uint64_t seed = 0;
};

// ER: each pair independently with probability p. BA: preferential attachment
// seeded by an m_attach-clique, m_attach distinct targets per arriving node
// drawn proportional to current degree. Path: edges (i, i+1).
// Output is fully determined by params.seed.
Graph generate(const GraphGenParams& params);

}  // namespace owlbench
