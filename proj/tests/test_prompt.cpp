#include <stdexcept>
#include "doctest.h"
#include "fixtures.hpp"
#include "owlbench/prompt.hpp"

using namespace owlbench;

namespace {

const std::string kFigureGraphBlock =
    "0: 1, 2, 3, 4, 5, 6, 8.\n"
    "1: 0, 5, 6, 7, 8, 9.\n"
    "2: 0, 5.\n"
    "3: 0, 5, 7, 8, 9.\n"
    "4: 0, 6, 7.\n"
    "5: 0, 1, 2, 3, 6, 7, 8.\n"
    "6: 0, 1, 4, 5, 9.\n"
    "7: 1, 3, 4, 5.\n"
    "8: 0, 1, 3, 5, 9.\n"
    "9: 1, 3, 6, 8.";

TaskInstance max_flow_figure_instance() {
  TaskInstance inst;
  inst.id = "figure-maxflow";
  inst.graph = figure_graph();
  inst.kind = TaskKind::kMaxFlow;
  inst.query = Query::for_pair(2, 9);
  inst.truth = Answer::of_int(2);
  inst.meta.graph_type = "figure";
  inst.meta.n = 10;
  return inst;
}

}  // namespace

TEST_CASE("adjacency encoding matches the figure byte for byte") {
  auto cfg = PromptTemplateConfig::defaults();
  CHECK(encode_graph(figure_graph(), EncodingVariant::kClOwl, cfg) == kFigureGraphBlock);
  CHECK(encode_graph(Graph(3, {{0, 1}, {1, 2}}), EncodingVariant::kLOwl, cfg) ==
        "0: 1.\n1: 0, 2.\n2: 1.");
}

TEST_CASE("isolated nodes render as (none)") {
  auto cfg = PromptTemplateConfig::defaults();
  CHECK(encode_graph(Graph(2, {}), EncodingVariant::kClOwl, cfg) == "0: (none).\n1: (none).");
}

TEST_CASE("tlg encodings") {
  auto cfg = PromptTemplateConfig::defaults();
  Graph p3(3, {{0, 1}, {1, 2}});
  CHECK(encode_graph(p3, EncodingVariant::kTlgA, cfg) ==
        "Nodes: 0, 1, 2.\nEdges: (0, 1), (1, 2).");
  CHECK(encode_graph(p3, EncodingVariant::kTlgF, cfg) ==
        "Nodes: Ross, Rachel, Monica.\nEdges: (Ross, Rachel), (Rachel, Monica).");
  Graph big(25, {});
  CHECK_THROWS_WITH_AS(encode_graph(big, EncodingVariant::kTlgF, cfg),
                       doctest::Contains("name list"), std::invalid_argument);
}

TEST_CASE("structural blocks per variant") {
  auto cfg = PromptTemplateConfig::defaults();
  LabelVector labels{0, 1, 0};
  ColorAssignment colors{{"red", "cyan", "red"}, {0, 180, 0}};
  CHECK(structural_blocks(labels, colors, EncodingVariant::kClOwl, cfg) ==
        "<<WL_LABELS>>\nWL(0):0, WL(1):1, WL(2):0\n"
        "<<COLORS>>\nColor(0):red, Color(1):cyan, Color(2):red");
  CHECK(structural_blocks(labels, colors, EncodingVariant::kCOwl, cfg) ==
        "<<COLORS>>\nColor(0):red, Color(1):cyan, Color(2):red");
  CHECK(structural_blocks(labels, colors, EncodingVariant::kTlgA, cfg).empty());
  ColorAssignment bad{{"red"}, {0}};
  CHECK_THROWS_AS(structural_blocks(labels, bad, EncodingVariant::kClOwl, cfg),
                  std::invalid_argument);
}

TEST_CASE("assembled prompt for the figure instance: block order and markers") {
  auto cfg = PromptTemplateConfig::defaults();
  auto bundle = assemble_prompt(max_flow_figure_instance(), EncodingVariant::kClOwl, cfg,
                                Palette::default_palette(), {});
  CHECK(bundle.user_text.find(kFigureGraphBlock) != std::string::npos);
  std::vector<std::string> order;
  for (const auto& m : bundle.marker_index) order.push_back(m.marker);
  CHECK(order == std::vector<std::string>{"<<GRAPH>>", "<<WL_LABELS>>", "<<COLORS>>",
                                          "<<TARGET_PAIR>>", "<<ANSWER>>"});
  CHECK(bundle.user_text.find("<<TARGET_PAIR>> 2,9") != std::string::npos);
  // offsets point at the markers themselves
  for (const auto& m : bundle.marker_index)
    CHECK(bundle.user_text.compare(m.offset, m.marker.size(), m.marker) == 0);
}

TEST_CASE("variant gating of WL and color blocks") {
  auto cfg = PromptTemplateConfig::defaults();
  auto inst = max_flow_figure_instance();
  Palette pal = Palette::default_palette();
  auto l = assemble_prompt(inst, EncodingVariant::kLOwl, cfg, pal, {});
  CHECK(l.has_marker("<<WL_LABELS>>"));
  CHECK_FALSE(l.has_marker("<<COLORS>>"));
  auto c = assemble_prompt(inst, EncodingVariant::kCOwl, cfg, pal, {});
  CHECK_FALSE(c.has_marker("<<WL_LABELS>>"));
  CHECK(c.has_marker("<<COLORS>>"));
  auto tlg = assemble_prompt(inst, EncodingVariant::kTlgA, cfg, pal, {});
  CHECK_FALSE(tlg.has_marker("<<WL_LABELS>>"));
  CHECK_FALSE(tlg.has_marker("<<COLORS>>"));
}

TEST_CASE("whole-graph tasks carry no target block") {
  auto cfg = PromptTemplateConfig::defaults();
  TaskInstance inst;
  inst.id = "tri";
  inst.graph = figure_graph();
  inst.kind = TaskKind::kTriangleCount;
  inst.query = Query::none();
  inst.truth = Answer::of_int(0);
  auto bundle = assemble_prompt(inst, EncodingVariant::kClOwl, cfg, Palette::default_palette(), {});
  CHECK_FALSE(bundle.has_marker("<<TARGET_NODE>>"));
  CHECK_FALSE(bundle.has_marker("<<TARGET_PAIR>>"));
}

TEST_CASE("few-shot builder") {
  auto cfg = PromptTemplateConfig::defaults();
  Palette pal = Palette::default_palette();
  std::vector<TaskInstance> pool;
  for (int i = 0; i < 4; ++i) {
    TaskInstance inst;
    inst.id = "sp-" + std::to_string(i);
    inst.graph = Graph(3, {{0, 1}, {1, 2}});
    inst.kind = TaskKind::kShortestPath;
    inst.query = Query::for_pair(0, 2);
    inst.truth = Answer::of_int(2);
    pool.push_back(inst);
  }
  auto shots = build_few_shot(pool, 1, "sp-0", EncodingVariant::kClOwl, cfg, pal, 9);
  REQUIRE(shots.size() == 1);
  CHECK(shots[0].instance_id != "sp-0");
  CHECK(shots[0].rendered.find("<<ANSWER>> 2") == shots[0].rendered.size() - 12);
  CHECK(build_few_shot(pool, 0, "sp-0", EncodingVariant::kClOwl, cfg, pal, 9).empty());
  std::vector<TaskInstance> tiny(pool.begin(), pool.begin() + 1);
  CHECK_THROWS_AS(build_few_shot(tiny, 1, "sp-0", EncodingVariant::kClOwl, cfg, pal, 9),
                  std::invalid_argument);
}

TEST_CASE("prompt assembly is deterministic") {
  auto cfg = PromptTemplateConfig::defaults();
  Palette pal = Palette::default_palette();
  auto inst = max_flow_figure_instance();
  auto a = assemble_prompt(inst, EncodingVariant::kClOwl, cfg, pal, {});
  auto b = assemble_prompt(inst, EncodingVariant::kClOwl, cfg, pal, {});
  CHECK(a.user_text == b.user_text);
  CHECK(a.system_text == b.system_text);
  CHECK(a.config_hash == b.config_hash);
}

TEST_CASE("permuted graphs yield permuted adjacency and structural content") {
  auto cfg = PromptTemplateConfig::defaults();
  Palette pal = Palette::default_palette();
  Graph g = figure_graph();
  std::vector<NodeId> perm{3, 1, 4, 0, 9, 2, 6, 8, 7, 5};
  Graph h = permute(g, perm);
  CHECK(encode_graph(h, EncodingVariant::kClOwl, cfg) ==
        encode_graph(permute(g, perm), EncodingVariant::kClOwl, cfg));
  auto tg = ordered_wl(g).final_labels();
  auto th = ordered_wl(h).final_labels();
  auto cg = assign_colors(tg, pal);
  auto ch = assign_colors(th, pal);
  for (int v = 0; v < g.num_nodes(); ++v) {
    CHECK(th[perm[v]] == tg[v]);
    CHECK(ch.names[perm[v]] == cg.names[v]);
  }
}

TEST_CASE("node classification prompt lists other nodes' labels") {
  auto cfg = PromptTemplateConfig::defaults();
  TaskInstance inst;
  inst.id = "nc";
  inst.graph = Graph(3, {{0, 1}, {1, 2}});
  inst.kind = TaskKind::kNodeClassification;
  inst.query = Query::for_node(1);
  inst.truth = Answer::of_label("B");
  inst.node_labels = {"A", "B", "A"};
  auto bundle = assemble_prompt(inst, EncodingVariant::kClOwl, cfg, Palette::default_palette(), {});
  CHECK(bundle.has_marker("<<NODE_LABELS>>"));
  CHECK(bundle.user_text.find("Label(0):A, Label(2):A") != std::string::npos);
  CHECK(bundle.user_text.find("Label(1):") == std::string::npos);
  CHECK(bundle.user_text.find("<<TARGET_NODE>> 1") != std::string::npos);
}
