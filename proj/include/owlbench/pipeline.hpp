#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "owlbench/gateway.hpp"
#include "owlbench/gen.hpp"
#include "owlbench/oracles.hpp"
#include "owlbench/prompt.hpp"

namespace owlbench {

struct DatasetGraphSpec {
  GraphKind kind = GraphKind::kErdosRenyi;
  std::vector<int> sizes;
  double p = 0.2;
  int m_attach = 4;
  int count_per_size = 10;
};

struct RealGraphSource {
  std::string edges_path;
  std::string labels_path;
  std::string name;
  std::vector<int> subgraph_sizes;
  int count_per_size = 10;
};

struct VerifyConfig {
  int wl_graphs = 200;
  int wl_max_n = 12;
  int degree_graphs = 500;
  int degree_max_n = 20;
  int tree_graphs = 200;
  int tree_max_n = 30;
  std::vector<int> depths = {2, 3, 4};
  int oracle_instances = 500;
  int oracle_max_n = 8;
};

struct RunConfig {
  uint64_t seed = 0;
  std::string output_dir = "out";
  std::vector<TaskKind> tasks;
  std::vector<DatasetGraphSpec> graph_specs;
  int instances_per_task = 200;
  InstanceConstraints constraints;
  std::vector<EncodingVariant> variants;
  PromptTemplateConfig prompt;
  Palette palette;
  Backend backend;
  std::string model = "mock";
  double temperature = 0.0;
  int max_tokens = 1024;
  RetryPolicy retry;
  int parallelism = 4;
  std::optional<std::string> cache_path;
  std::optional<RealGraphSource> real_graph;
  VerifyConfig verify;
  std::string config_hash;  // over the fully resolved document

  static RunConfig from_yaml_file(const std::string& path);
};

struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;
};

// Whitespace-delimited "u v" edge lines and "node label" lines; ids remapped
// to 0..n-1, duplicate edges collapsed.
LabeledGraph load_real_graph(const RealGraphSource& source);

// Connected k-node subgraph by randomized-frontier BFS from a random seed
// node; ids remapped, labels carried over.
LabeledGraph sample_subgraph(const LabeledGraph& g, int k, uint64_t seed);

enum class Stage { kGenerate, kPrompt, kRun, kParse, kReport, kVerify };
Stage stage_from_string(const std::string& s);

struct StageOutcome {
  bool skipped = false;  // inputs and outputs matched the manifest
  bool ok = true;        // verify only: false on any property violation
  std::vector<std::string> outputs;
  std::string summary;
};

// Executes one stage against config.output_dir, updating manifest.json.
// Artifacts: instances.jsonl, prompts.jsonl, responses.jsonl, results.jsonl,
// report.csv, report.txt, verify.txt.
StageOutcome run_stage(Stage stage, const RunConfig& config, bool force = false);

}  // namespace owlbench
