#include <stdexcept>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "owlbench/pipeline.hpp"

using namespace owlbench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string small_config_yaml(const std::string& out_dir) {
  return "seed: 123\n"
         "output_dir: " + out_dir + "\n"
         "dataset:\n"
         "  tasks: [shortest_path, cycle_check]\n"
         "  graphs:\n"
         "    - kind: erdos_renyi\n"
         "      sizes: [8, 10]\n"
         "      p: 0.3\n"
         "      count_per_size: 3\n"
         "  instances_per_task: 12\n"
         "variants: [cl_owl, tlg_a]\n"
         "prompt:\n"
         "  few_shot_count: 1\n"
         "backend:\n"
         "  kind: mock_oracle\n"
         "  model: mock\n"
         "parallelism: 3\n";
}

}  // namespace

TEST_CASE("config loading resolves defaults and hashes the document") {
  TempDir dir("owlbench_cfg_test");
  write(dir.path / "run.yaml", small_config_yaml((dir.path / "out").string()));
  RunConfig cfg = RunConfig::from_yaml_file((dir.path / "run.yaml").string());
  CHECK(cfg.seed == 123);
  CHECK(cfg.tasks.size() == 2);
  CHECK(cfg.variants.size() == 2);
  CHECK(cfg.prompt.few_shot_count == 1);
  CHECK_FALSE(cfg.config_hash.empty());

  write(dir.path / "noseed.yaml", "output_dir: x\n");
  CHECK_THROWS_AS(RunConfig::from_yaml_file((dir.path / "noseed.yaml").string()),
                  std::invalid_argument);
}

TEST_CASE("real graph loading: remap, dedup, label checks") {
  TempDir dir("owlbench_realgraph_test");
  write(dir.path / "edges.txt", "0 1\n1 2\n");
  write(dir.path / "labels.txt", "0 A\n1 B\n2 A\n");
  RealGraphSource src{(dir.path / "edges.txt").string(), (dir.path / "labels.txt").string(), "t"};
  LabeledGraph g = load_real_graph(src);
  CHECK(g.graph.num_nodes() == 3);
  CHECK(g.graph.num_edges() == 2);
  CHECK(g.labels == std::vector<std::string>{"A", "B", "A"});

  write(dir.path / "dup.txt", "5 9\n9 5\n");
  write(dir.path / "dup_labels.txt", "5 A\n9 B\n");
  LabeledGraph d = load_real_graph(
      {(dir.path / "dup.txt").string(), (dir.path / "dup_labels.txt").string(), "d"});
  CHECK(d.graph.num_nodes() == 2);
  CHECK(d.graph.num_edges() == 1);

  write(dir.path / "bad_labels.txt", "0 A\n99 B\n");
  CHECK_THROWS_WITH_AS(
      load_real_graph({(dir.path / "edges.txt").string(), (dir.path / "bad_labels.txt").string(), "b"}),
      doctest::Contains("unknown node"), std::runtime_error);

  write(dir.path / "empty.txt", "");
  CHECK_THROWS_AS(
      load_real_graph({(dir.path / "empty.txt").string(), (dir.path / "labels.txt").string(), "e"}),
      std::runtime_error);
}

TEST_CASE("subgraph sampling returns connected induced subgraphs") {
  TempDir dir("owlbench_subgraph_test");
  write(dir.path / "edges.txt", "0 1\n1 2\n2 3\n3 4\n");
  write(dir.path / "labels.txt", "0 A\n1 B\n2 A\n3 B\n4 A\n");
  LabeledGraph p5 = load_real_graph(
      {(dir.path / "edges.txt").string(), (dir.path / "labels.txt").string(), "p5"});

  LabeledGraph whole = sample_subgraph(p5, 5, 1);
  CHECK(whole.graph.num_edges() == 4);

  LabeledGraph seg = sample_subgraph(p5, 3, 2);
  CHECK(seg.graph.num_nodes() == 3);
  CHECK(seg.graph.num_edges() == 2);  // contiguous path segment
  CHECK(seg.labels.size() == 3);

  // two components of size <= 2 cannot produce a 4-node subgraph
  write(dir.path / "split.txt", "0 1\n2 3\n");
  write(dir.path / "split_labels.txt", "0 A\n1 A\n2 B\n3 B\n");
  LabeledGraph split = load_real_graph(
      {(dir.path / "split.txt").string(), (dir.path / "split_labels.txt").string(), "s"});
  CHECK_THROWS_AS(sample_subgraph(split, 4, 3), std::runtime_error);
}

TEST_CASE("staged pipeline end to end with the oracle backend") {
  TempDir dir("owlbench_pipeline_test");
  fs::path out = dir.path / "out";
  write(dir.path / "run.yaml", small_config_yaml(out.string()));
  RunConfig cfg = RunConfig::from_yaml_file((dir.path / "run.yaml").string());

  CHECK_THROWS_WITH_AS(run_stage(Stage::kPrompt, cfg), doctest::Contains("missing upstream"),
                       std::runtime_error);

  for (Stage s : {Stage::kGenerate, Stage::kPrompt, Stage::kRun, Stage::kParse, Stage::kReport})
    CHECK_FALSE(run_stage(s, cfg).skipped);

  CHECK(fs::exists(out / "instances.jsonl"));
  CHECK(fs::exists(out / "prompts.jsonl"));
  CHECK(fs::exists(out / "report.csv"));
  CHECK(fs::exists(out / "manifest.json"));

  // oracle echo scores perfectly everywhere
  std::string csv = read(out / "report.csv");
  CHECK(csv.find("100.0000,100.0000,0.0000,100.0000") != std::string::npos);

  // idempotence: unchanged inputs are skipped
  for (Stage s : {Stage::kGenerate, Stage::kPrompt, Stage::kRun, Stage::kParse, Stage::kReport})
    CHECK(run_stage(s, cfg).skipped);

  // determinism: a second run from scratch produces identical artifacts
  fs::path out2 = dir.path / "out2";
  RunConfig cfg2 = cfg;
  cfg2.output_dir = out2.string();
  for (Stage s : {Stage::kGenerate, Stage::kPrompt, Stage::kRun, Stage::kParse, Stage::kReport})
    run_stage(s, cfg2);
  for (const char* name : {"instances.jsonl", "prompts.jsonl", "responses.jsonl", "results.jsonl",
                           "report.csv"})
    CHECK(read(out / name) == read(out2 / name));
}

TEST_CASE("verify stage writes its property report and passes") {
  TempDir dir("owlbench_verify_test");
  RunConfig cfg;
  cfg.seed = 5;
  cfg.output_dir = (dir.path / "out").string();
  cfg.config_hash = "test";
  cfg.verify.wl_graphs = 20;
  cfg.verify.degree_graphs = 20;
  cfg.verify.tree_graphs = 20;
  cfg.verify.oracle_instances = 20;
  cfg.verify.depths = {2};
  StageOutcome outcome = run_stage(Stage::kVerify, cfg);
  CHECK(outcome.ok);
  CHECK(read(dir.path / "out" / "verify.txt").find("VERIFY PASS") != std::string::npos);
}
