#include "owlbench/prompt.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "owlbench/hash.hpp"
#include "owlbench/rng.hpp"

namespace owlbench {

EncodingVariant variant_from_string(const std::string& s) {
  if (s == "tlg_a") return EncodingVariant::kTlgA;
  if (s == "tlg_f") return EncodingVariant::kTlgF;
  if (s == "l_owl") return EncodingVariant::kLOwl;
  if (s == "c_owl") return EncodingVariant::kCOwl;
  if (s == "cl_owl") return EncodingVariant::kClOwl;
  throw std::invalid_argument("unknown encoding variant: " + s);
}

std::string to_string(EncodingVariant v) {
  switch (v) {
    case EncodingVariant::kTlgA: return "tlg_a";
    case EncodingVariant::kTlgF: return "tlg_f";
    case EncodingVariant::kLOwl: return "l_owl";
    case EncodingVariant::kCOwl: return "c_owl";
    case EncodingVariant::kClOwl: return "cl_owl";
  }
  return "?";
}

bool variant_has_wl(EncodingVariant v) {
  return v == EncodingVariant::kLOwl || v == EncodingVariant::kClOwl;
}

bool variant_has_colors(EncodingVariant v) {
  return v == EncodingVariant::kCOwl || v == EncodingVariant::kClOwl;
}

PromptTemplateConfig PromptTemplateConfig::defaults() {
  PromptTemplateConfig c;
  c.system_text =
      "You are an expert in graph theory and graph machine learning. You have deep knowledge of "
      "the Weisfeiler-Leman (WL) algorithm, structural graph analysis, and graph visualization "
      "techniques.\n"
      "Graph structure is provided as adjacency lists: each line is `node: neighbor1, neighbor2, "
      "...` and isolated nodes use `(none)`.\n"
      "Always follow the example format and present the final answer after the `<<ANSWER>>` "
      "marker.\n"
      "Reason carefully about the graph before responding.";
  c.task_instructions = {
      {"triangle_count", "Your task is to return the number of triangles in the graph."},
      {"cycle_check",
       "Your task is to answer Yes/No whether the <<TARGET_NODE>> is part of any cycle."},
      {"reachability",
       "Your task is to answer Yes/No whether a path exists between the <<TARGET_PAIR>>."},
      {"shortest_path",
       "Your task is to return the shortest path length between the <<TARGET_PAIR>> (inf if no "
       "path)."},
      {"max_flow",
       "Your task is to return the maximum flow value between the <<TARGET_PAIR>> with unit "
       "capacities."},
      {"node_classification",
       "Your task is to predict the class label of the <<TARGET_NODE>> given the labels of the "
       "other nodes."},
  };
  c.tlg_f_names = {"Ross",    "Rachel", "Monica", "Chandler", "Joey",  "Phoebe", "Gunther",
                   "Janice",  "Emily",  "Richard", "Mike",    "Carol", "Susan",  "Ben",
                   "Emma",    "Jack",   "Judy",   "Estelle",  "Ursula", "Frank"};
  return c;
}

std::string PromptTemplateConfig::canonical_serialization() const {
  nlohmann::json j;
  j["system_text"] = system_text;
  j["task_instructions"] = task_instructions;
  j["few_shot_count"] = few_shot_count;
  j["adjacency_trailing_period"] = adjacency_trailing_period;
  j["structural_items_per_line"] = structural_items_per_line;
  j["tlg_f_names"] = tlg_f_names;
  return j.dump();
}

bool PromptBundle::has_marker(const std::string& marker) const {
  return std::any_of(marker_index.begin(), marker_index.end(),
                     [&](const MarkerSpan& m) { return m.marker == marker; });
}

std::string PromptBundle::to_jsonl() const {
  nlohmann::json j;
  j["id"] = instance_id;
  j["variant"] = to_string(variant);
  j["system"] = system_text;
  j["user"] = user_text;
  j["config_hash"] = config_hash;
  return j.dump();
}

namespace {

std::string node_name(NodeId v, EncodingVariant variant, const PromptTemplateConfig& config) {
  if (variant != EncodingVariant::kTlgF) return std::to_string(v);
  if (static_cast<size_t>(v) >= config.tlg_f_names.size())
    throw std::invalid_argument("tlg_f: graph has " + std::to_string(v + 1) +
                                " nodes but the name list holds only " +
                                std::to_string(config.tlg_f_names.size()));
  return config.tlg_f_names[v];
}

// "Item(v):value" lines, wrapped like the prompt figures.
std::string item_lines(const std::string& prefix, const std::vector<std::string>& values,
                       const std::vector<NodeId>& ids, int per_line) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    out += prefix + "(" + std::to_string(ids[i]) + "):" + values[i];
    if (i + 1 < values.size())
      out += (per_line > 0 && (i + 1) % per_line == 0) ? ",\n" : ", ";
  }
  return out;
}

}  // namespace

std::string encode_graph(const Graph& g, EncodingVariant variant,
                         const PromptTemplateConfig& config) {
  std::string out;
  if (variant == EncodingVariant::kTlgA || variant == EncodingVariant::kTlgF) {
    if (variant == EncodingVariant::kTlgF &&
        static_cast<size_t>(g.num_nodes()) > config.tlg_f_names.size())
      throw std::invalid_argument("tlg_f: graph has " + std::to_string(g.num_nodes()) +
                                  " nodes but the name list holds only " +
                                  std::to_string(config.tlg_f_names.size()));
    out += "Nodes: ";
    for (int v = 0; v < g.num_nodes(); ++v) {
      out += node_name(v, variant, config);
      if (v + 1 < g.num_nodes()) out += ", ";
    }
    out += ".\nEdges: ";
    const auto& edges = g.edges();
    for (size_t i = 0; i < edges.size(); ++i) {
      out += "(" + node_name(edges[i].first, variant, config) + ", " +
             node_name(edges[i].second, variant, config) + ")";
      if (i + 1 < edges.size()) out += ", ";
    }
    out += ".";
    return out;
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    out += std::to_string(v) + ": ";
    const auto& nbrs = g.neighbors(v);
    if (nbrs.empty()) {
      out += "(none)";
    } else {
      for (size_t i = 0; i < nbrs.size(); ++i) {
        out += std::to_string(nbrs[i]);
        if (i + 1 < nbrs.size()) out += ", ";
      }
    }
    if (config.adjacency_trailing_period) out += ".";
    if (v + 1 < g.num_nodes()) out += "\n";
  }
  return out;
}

std::string structural_blocks(const LabelVector& labels, const ColorAssignment& colors,
                              EncodingVariant variant, const PromptTemplateConfig& config) {
  if (!variant_has_wl(variant) && !variant_has_colors(variant)) return "";
  if (variant_has_colors(variant) && colors.names.size() != labels.size())
    throw std::invalid_argument("structural_blocks: color/label length mismatch");
  std::vector<NodeId> ids(labels.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::string out;
  if (variant_has_wl(variant)) {
    std::vector<std::string> items;
    for (int l : labels) items.push_back(std::to_string(l));
    out += "<<WL_LABELS>>\n";
    out += item_lines("WL", items, ids, config.structural_items_per_line);
  }
  if (variant_has_colors(variant)) {
    if (!out.empty()) out += "\n";
    out += "<<COLORS>>\n";
    out += item_lines("Color", colors.names, ids, config.structural_items_per_line);
  }
  return out;
}

namespace {

std::string render_target(const Query& query) {
  switch (query.kind) {
    case Query::Kind::kNone: return "";
    case Query::Kind::kNode: return "<<TARGET_NODE>> " + std::to_string(query.node);
    case Query::Kind::kPair:
      return "<<TARGET_PAIR>> " + std::to_string(query.source) + "," +
             std::to_string(query.target);
  }
  return "";
}

// Graph + structural + node-label + target blocks for one instance; shared by
// the evaluation body and the few-shot wrapper.
std::string render_instance_blocks(const TaskInstance& inst, EncodingVariant variant,
                                   const PromptTemplateConfig& config, const Palette& palette) {
  std::string out = "<<GRAPH>>\n" + encode_graph(inst.graph, variant, config);
  if (variant_has_wl(variant) || variant_has_colors(variant)) {
    auto trace = ordered_wl(inst.graph);
    const LabelVector& labels = trace.final_labels();
    ColorAssignment colors;
    if (variant_has_colors(variant)) colors = assign_colors(labels, palette);
    out += "\n" + structural_blocks(labels, colors, variant, config);
  }
  if (inst.kind == TaskKind::kNodeClassification) {
    std::vector<std::string> items;
    std::vector<NodeId> ids;
    for (int v = 0; v < inst.graph.num_nodes(); ++v) {
      if (v == inst.query.node) continue;
      items.push_back(inst.node_labels[v]);
      ids.push_back(v);
    }
    out += "\n<<NODE_LABELS>>\n" + item_lines("Label", items, ids, config.structural_items_per_line);
  }
  std::string target = render_target(inst.query);
  if (!target.empty()) out += "\n" + target;
  return out;
}

}  // namespace

std::vector<FewShotExample> build_few_shot(const std::vector<TaskInstance>& pool, int k,
                                           const std::string& exclude_id,
                                           EncodingVariant variant,
                                           const PromptTemplateConfig& config,
                                           const Palette& palette, uint64_t seed) {
  std::vector<size_t> candidates;
  for (size_t i = 0; i < pool.size(); ++i)
    if (pool[i].id != exclude_id) candidates.push_back(i);
  if (static_cast<int>(candidates.size()) < k)
    throw std::invalid_argument("build_few_shot: pool holds " +
                                std::to_string(candidates.size()) + " usable instances, need " +
                                std::to_string(k));
  SplitMix64 rng(seed);
  for (size_t i = 0; i + 1 < candidates.size(); ++i) {
    size_t j = i + rng.next_below(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  std::vector<FewShotExample> out;
  for (int i = 0; i < k; ++i) {
    const TaskInstance& inst = pool[candidates[i]];
    FewShotExample ex;
    ex.instance_id = inst.id;
    ex.rendered = render_instance_blocks(inst, variant, config, palette) + "\n<<ANSWER>> " +
                  inst.truth.to_text();
    out.push_back(std::move(ex));
  }
  return out;
}

PromptBundle assemble_prompt(const TaskInstance& instance, EncodingVariant variant,
                             const PromptTemplateConfig& config, const Palette& palette,
                             const std::vector<FewShotExample>& few_shot) {
  auto it = config.task_instructions.find(to_string(instance.kind));
  if (it == config.task_instructions.end())
    throw std::invalid_argument("assemble_prompt: no instruction template for task " +
                                to_string(instance.kind));
  PromptBundle bundle;
  bundle.variant = variant;
  bundle.instance_id = instance.id;
  bundle.system_text = config.system_text;
  bundle.config_hash = sha256_hex(config.canonical_serialization());

  std::string& user = bundle.user_text;
  user += it->second + "\n";
  if (variant == EncodingVariant::kTlgA || variant == EncodingVariant::kTlgF) {
    user += "A graph is represented as a list of nodes and a list of edges (u, v).\n";
  } else {
    user += "A graph is represented as adjacency lists where each line is `node: neighbor1, "
            "...`.\n";
  }
  if (variant_has_wl(variant))
    user += "`<<WL_LABELS>>` shows Weisfeiler-Lehman structural labels for each node.\n";
  if (variant_has_colors(variant)) {
    user += "`<<COLORS>>` shows colors assigned based on WL label similarity.\n";
    user += "Colors act as a similarity metric among nodes.\n";
  }
  if (instance.kind == TaskKind::kNodeClassification)
    user += "`<<NODE_LABELS>>` lists the known class labels of the other nodes.\n";
  user += "\n";

  if (!few_shot.empty()) {
    user += "The following examples demonstrate the format.\n\n";
    for (const auto& ex : few_shot) user += ex.rendered + "\n\n";
  }

  auto mark = [&](const std::string& marker) {
    bundle.marker_index.push_back({marker, user.size()});
  };

  mark("<<GRAPH>>");
  user += "<<GRAPH>>\n" + encode_graph(instance.graph, variant, config) + "\n";
  if (variant_has_wl(variant) || variant_has_colors(variant)) {
    auto trace = ordered_wl(instance.graph);
    const LabelVector& labels = trace.final_labels();
    ColorAssignment colors;
    if (variant_has_colors(variant)) colors = assign_colors(labels, palette);
    if (variant_has_wl(variant)) {
      mark("<<WL_LABELS>>");
      user += structural_blocks(labels, colors, EncodingVariant::kLOwl, config) + "\n";
    }
    if (variant_has_colors(variant)) {
      mark("<<COLORS>>");
      user += structural_blocks(labels, colors, EncodingVariant::kCOwl, config) + "\n";
    }
  }
  if (instance.kind == TaskKind::kNodeClassification) {
    std::vector<std::string> items;
    std::vector<NodeId> ids;
    for (int v = 0; v < instance.graph.num_nodes(); ++v) {
      if (v == instance.query.node) continue;
      items.push_back(instance.node_labels[v]);
      ids.push_back(v);
    }
    mark("<<NODE_LABELS>>");
    user += "<<NODE_LABELS>>\n" +
            item_lines("Label", items, ids, config.structural_items_per_line) + "\n";
  }
  std::string target = render_target(instance.query);
  if (!target.empty()) {
    mark(instance.query.kind == Query::Kind::kNode ? "<<TARGET_NODE>>" : "<<TARGET_PAIR>>");
    user += target + "\n";
  }
  user += "\n";
  user += "Use the provided markers consistently and place the final answer after the <<ANSWER>> "
          "marker. Think step-by-step about the graph before responding.\n";
  mark("<<ANSWER>>");
  user += "<<ANSWER>>";
  return bundle;
}

}  // namespace owlbench
