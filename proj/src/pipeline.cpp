#include "owlbench/pipeline.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "owlbench/hash.hpp"
#include "owlbench/metrics.hpp"
#include "owlbench/reference.hpp"
#include "owlbench/rng.hpp"
#include "owlbench/wl.hpp"

namespace fs = std::filesystem;

namespace owlbench {

namespace {

constexpr const char* kVersion = "owlbench 0.1.0";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::string file_digest(const fs::path& path) { return sha256_hex(read_file(path)); }

}  // namespace

// ---------------------------------------------------------------- config ---

RunConfig RunConfig::from_yaml_file(const std::string& path) {
  YAML::Node doc = YAML::LoadFile(path);
  RunConfig cfg;
  if (!doc["seed"]) throw std::invalid_argument("config: seed is required");
  cfg.seed = doc["seed"].as<uint64_t>();
  cfg.output_dir = doc["output_dir"] ? doc["output_dir"].as<std::string>() : "out";

  if (YAML::Node ds = doc["dataset"]) {
    for (const auto& t : ds["tasks"])
      cfg.tasks.push_back(task_kind_from_string(t.as<std::string>()));
    for (const auto& gn : ds["graphs"]) {
      DatasetGraphSpec spec;
      spec.kind = graph_kind_from_string(gn["kind"].as<std::string>());
      for (const auto& s : gn["sizes"]) spec.sizes.push_back(s.as<int>());
      if (gn["p"]) spec.p = gn["p"].as<double>();
      if (gn["m_attach"]) spec.m_attach = gn["m_attach"].as<int>();
      if (gn["count_per_size"]) spec.count_per_size = gn["count_per_size"].as<int>();
      cfg.graph_specs.push_back(spec);
    }
    if (ds["instances_per_task"]) cfg.instances_per_task = ds["instances_per_task"].as<int>();
    if (YAML::Node cn = ds["constraints"]) {
      if (cn["min_diameter"]) cfg.constraints.min_diameter = cn["min_diameter"].as<int>();
      if (cn["require_connected_pair"])
        cfg.constraints.require_connected_pair = cn["require_connected_pair"].as<bool>();
      if (YAML::Node bins = cn["distance_bins"]) {
        if (bins.IsScalar() && bins.as<std::string>() == "default") {
          cfg.constraints.distance_bins = default_distance_bins();
        } else {
          for (const auto& b : bins)
            cfg.constraints.distance_bins.push_back({b[0].as<int>(), b[1].as<int>()});
        }
      }
    }
  }

  if (doc["variants"])
    for (const auto& v : doc["variants"])
      cfg.variants.push_back(variant_from_string(v.as<std::string>()));
  if (cfg.variants.empty()) cfg.variants.push_back(EncodingVariant::kClOwl);

  cfg.prompt = PromptTemplateConfig::defaults();
  if (YAML::Node pn = doc["prompt"]) {
    if (pn["few_shot_count"]) cfg.prompt.few_shot_count = pn["few_shot_count"].as<int>();
    if (pn["system_text"]) cfg.prompt.system_text = pn["system_text"].as<std::string>();
    if (pn["adjacency_trailing_period"])
      cfg.prompt.adjacency_trailing_period = pn["adjacency_trailing_period"].as<bool>();
    if (YAML::Node ti = pn["task_instructions"])
      for (const auto& kv : ti)
        cfg.prompt.task_instructions[kv.first.as<std::string>()] = kv.second.as<std::string>();
  }

  cfg.palette = Palette::default_palette();
  if (doc["palette_file"]) cfg.palette = Palette::from_json(read_file(doc["palette_file"].as<std::string>()));

  if (YAML::Node bn = doc["backend"]) {
    std::string kind = bn["kind"] ? bn["kind"].as<std::string>() : "mock_oracle";
    if (kind == "mock_oracle") {
      cfg.backend = Backend::mock_oracle({});
    } else if (kind == "mock_fixed") {
      cfg.backend = Backend::mock_fixed(bn["fixed_text"] ? bn["fixed_text"].as<std::string>() : "");
    } else if (kind == "http_chat") {
      if (!bn["endpoint"] || !bn["credential_env"])
        throw std::invalid_argument("config: http_chat backend needs endpoint and credential_env");
      cfg.backend = Backend::http_chat(bn["endpoint"].as<std::string>(),
                                       bn["credential_env"].as<std::string>());
    } else {
      throw std::invalid_argument("config: unknown backend kind " + kind);
    }
    if (bn["model"]) cfg.model = bn["model"].as<std::string>();
    if (bn["temperature"]) cfg.temperature = bn["temperature"].as<double>();
    if (bn["max_tokens"]) cfg.max_tokens = bn["max_tokens"].as<int>();
    if (bn["max_attempts"]) cfg.retry.max_attempts = bn["max_attempts"].as<int>();
  } else {
    cfg.backend = Backend::mock_oracle({});
  }

  if (doc["parallelism"]) cfg.parallelism = doc["parallelism"].as<int>();
  if (doc["cache"]) cfg.cache_path = doc["cache"].as<std::string>();

  if (YAML::Node rg = doc["real_graph"]) {
    RealGraphSource src;
    src.edges_path = rg["edges_path"].as<std::string>();
    src.labels_path = rg["labels_path"].as<std::string>();
    src.name = rg["name"] ? rg["name"].as<std::string>() : "real";
    if (rg["subgraph_sizes"])
      for (const auto& s : rg["subgraph_sizes"]) src.subgraph_sizes.push_back(s.as<int>());
    if (rg["count_per_size"]) src.count_per_size = rg["count_per_size"].as<int>();
    if (!fs::exists(src.edges_path))
      throw std::invalid_argument("config: real_graph edges file missing: " + src.edges_path);
    if (!fs::exists(src.labels_path))
      throw std::invalid_argument("config: real_graph labels file missing: " + src.labels_path);
    cfg.real_graph = src;
  }

  if (YAML::Node vn = doc["verify"]) {
    if (vn["wl_graphs"]) cfg.verify.wl_graphs = vn["wl_graphs"].as<int>();
    if (vn["degree_graphs"]) cfg.verify.degree_graphs = vn["degree_graphs"].as<int>();
    if (vn["tree_graphs"]) cfg.verify.tree_graphs = vn["tree_graphs"].as<int>();
    if (vn["oracle_instances"]) cfg.verify.oracle_instances = vn["oracle_instances"].as<int>();
    if (vn["depths"]) {
      cfg.verify.depths.clear();
      for (const auto& d : vn["depths"]) cfg.verify.depths.push_back(d.as<int>());
    }
  }

  // hash over the fully resolved document
  nlohmann::json resolved;
  resolved["seed"] = cfg.seed;
  resolved["tasks"] = nlohmann::json::array();
  for (auto t : cfg.tasks) resolved["tasks"].push_back(to_string(t));
  resolved["graphs"] = nlohmann::json::array();
  for (const auto& g : cfg.graph_specs)
    resolved["graphs"].push_back({{"kind", to_string(g.kind)},
                                  {"sizes", g.sizes},
                                  {"p", g.p},
                                  {"m_attach", g.m_attach},
                                  {"count_per_size", g.count_per_size}});
  resolved["instances_per_task"] = cfg.instances_per_task;
  resolved["variants"] = nlohmann::json::array();
  for (auto v : cfg.variants) resolved["variants"].push_back(to_string(v));
  resolved["prompt"] = cfg.prompt.canonical_serialization();
  resolved["model"] = cfg.model;
  resolved["temperature"] = cfg.temperature;
  resolved["max_tokens"] = cfg.max_tokens;
  cfg.config_hash = sha256_hex(resolved.dump());
  return cfg;
}

// ----------------------------------------------------------- real graphs ---

LabeledGraph load_real_graph(const RealGraphSource& source) {
  std::map<long long, NodeId> remap;
  std::vector<std::pair<long long, long long>> raw_edges;
  {
    std::ifstream in(source.edges_path);
    if (!in) throw std::runtime_error("cannot read " + source.edges_path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::istringstream ss(line);
      long long u, v;
      if (!(ss >> u >> v))
        throw std::runtime_error(source.edges_path + ":" + std::to_string(line_no) +
                                 ": malformed edge line");
      raw_edges.push_back({u, v});
      if (!remap.count(u)) remap[u] = static_cast<NodeId>(remap.size());
      if (!remap.count(v)) remap[v] = static_cast<NodeId>(remap.size());
    }
  }
  if (raw_edges.empty()) throw std::runtime_error("empty edge file: " + source.edges_path);
  std::vector<Edge> edges;
  for (const auto& [u, v] : raw_edges)
    if (u != v) edges.push_back({remap[u], remap[v]});
  LabeledGraph out;
  out.graph = Graph(static_cast<int>(remap.size()), edges);
  out.labels.assign(remap.size(), "");
  {
    std::ifstream in(source.labels_path);
    if (!in) throw std::runtime_error("cannot read " + source.labels_path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::istringstream ss(line);
      long long node;
      std::string label;
      if (!(ss >> node >> label))
        throw std::runtime_error(source.labels_path + ":" + std::to_string(line_no) +
                                 ": malformed label line");
      auto it = remap.find(node);
      if (it == remap.end())
        throw std::runtime_error(source.labels_path + ":" + std::to_string(line_no) +
                                 ": label for unknown node " + std::to_string(node));
      out.labels[it->second] = label;
    }
  }
  for (size_t v = 0; v < out.labels.size(); ++v)
    if (out.labels[v].empty())
      throw std::runtime_error("node " + std::to_string(v) + " has no label");
  return out;
}

LabeledGraph sample_subgraph(const LabeledGraph& g, int k, uint64_t seed) {
  int n = g.graph.num_nodes();
  if (k < 1 || k > n) throw std::invalid_argument("sample_subgraph: bad target size");
  SplitMix64 rng(seed);
  constexpr int kRetries = 100;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    NodeId start = static_cast<NodeId>(rng.next_below(n));
    std::vector<NodeId> collected{start};
    std::set<NodeId> in_set{start};
    std::vector<NodeId> frontier{start};
    while (static_cast<int>(collected.size()) < k && !frontier.empty()) {
      // randomized frontier order
      size_t pick = rng.next_below(frontier.size());
      NodeId v = frontier[pick];
      frontier.erase(frontier.begin() + pick);
      for (NodeId u : g.graph.neighbors(v)) {
        if (in_set.count(u)) continue;
        in_set.insert(u);
        collected.push_back(u);
        frontier.push_back(u);
        if (static_cast<int>(collected.size()) == k) break;
      }
    }
    if (static_cast<int>(collected.size()) < k) continue;  // small component
    std::sort(collected.begin(), collected.end());
    std::map<NodeId, NodeId> remap;
    for (size_t i = 0; i < collected.size(); ++i) remap[collected[i]] = static_cast<NodeId>(i);
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.graph.edges())
      if (remap.count(u) && remap.count(v)) edges.push_back({remap[u], remap[v]});
    LabeledGraph out;
    out.graph = Graph(k, edges);
    out.labels.reserve(k);
    for (NodeId v : collected) out.labels.push_back(g.labels[v]);
    return out;
  }
  throw std::runtime_error("sample_subgraph: no connected component of size >= " +
                           std::to_string(k) + " reachable within the retry budget");
}

// --------------------------------------------------------------- manifest ---

namespace {

class Manifest {
 public:
  Manifest(const fs::path& dir, const std::string& config_hash, uint64_t seed)
      : path_(dir / "manifest.json") {
    if (fs::exists(path_)) {
      doc_ = nlohmann::json::parse(read_file(path_));
    } else {
      doc_["version"] = kVersion;
      doc_["config_hash"] = config_hash;
      doc_["seed"] = seed;
      doc_["stages"] = nlohmann::json::object();
    }
    config_hash_ = config_hash;
  }

  bool config_matches() const { return doc_.at("config_hash").get<std::string>() == config_hash_; }

  // True when the recorded digests equal the current files on both sides.
  bool stage_up_to_date(const std::string& stage, const std::vector<fs::path>& inputs,
                        const std::vector<fs::path>& outputs) const {
    if (!doc_["stages"].contains(stage)) return false;
    const auto& rec = doc_["stages"][stage];
    auto matches = [&](const char* field, const std::vector<fs::path>& files) {
      if (rec[field].size() != files.size()) return false;
      for (const auto& f : files) {
        if (!fs::exists(f)) return false;
        if (!rec[field].contains(f.filename().string())) return false;
        if (rec[field][f.filename().string()].get<std::string>() != file_digest(f)) return false;
      }
      return true;
    };
    return matches("inputs", inputs) && matches("outputs", outputs);
  }

  void record_stage(const std::string& stage, const std::vector<fs::path>& inputs,
                    const std::vector<fs::path>& outputs) {
    nlohmann::json rec;
    rec["inputs"] = nlohmann::json::object();
    rec["outputs"] = nlohmann::json::object();
    for (const auto& f : inputs) rec["inputs"][f.filename().string()] = file_digest(f);
    for (const auto& f : outputs) rec["outputs"][f.filename().string()] = file_digest(f);
    rec["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
    doc_["stages"][stage] = rec;
    doc_["config_hash"] = config_hash_;
    doc_["version"] = kVersion;
    write_file(path_, doc_.dump(2) + "\n");
  }

 private:
  fs::path path_;
  nlohmann::json doc_;
  std::string config_hash_;
};

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::kGenerate: return "generate";
    case Stage::kPrompt: return "prompt";
    case Stage::kRun: return "run";
    case Stage::kParse: return "parse";
    case Stage::kReport: return "report";
    case Stage::kVerify: return "verify";
  }
  return "?";
}

// ------------------------------------------------------------- generate ---

std::vector<SourceGraph> build_source_graphs(const RunConfig& cfg, TaskKind kind) {
  std::vector<SourceGraph> sources;
  if (kind == TaskKind::kNodeClassification) {
    if (!cfg.real_graph)
      throw std::invalid_argument("generate: node_classification requires a real_graph source");
    LabeledGraph full = load_real_graph(*cfg.real_graph);
    uint64_t stream = 0;
    for (int size : cfg.real_graph->subgraph_sizes)
      for (int i = 0; i < cfg.real_graph->count_per_size; ++i) {
        uint64_t sub_seed = SplitMix64::stream(cfg.seed, 0xc1a5 + stream++).next_u64();
        LabeledGraph sub = sample_subgraph(full, size, sub_seed);
        SourceGraph src;
        src.graph = sub.graph;
        src.labels = sub.labels;
        src.meta.graph_type = cfg.real_graph->name;
        src.meta.n = size;
        src.meta.seed = sub_seed;
        src.meta.extra["sampling"] = "randomized_frontier_bfs";
        sources.push_back(std::move(src));
      }
    return sources;
  }
  uint64_t stream = 0;
  for (const auto& spec : cfg.graph_specs)
    for (int size : spec.sizes)
      for (int i = 0; i < spec.count_per_size; ++i) {
        GraphGenParams params;
        params.kind = spec.kind;
        params.n = size;
        params.p = spec.p;
        params.m_attach = spec.m_attach;
        params.seed = SplitMix64::stream(cfg.seed, 0x9e0 + stream++).next_u64();
        SourceGraph src;
        src.graph = generate(params);
        src.meta.graph_type = to_string(spec.kind);
        src.meta.n = size;
        src.meta.seed = params.seed;
        sources.push_back(std::move(src));
      }
  if (sources.empty()) throw std::invalid_argument("generate: no graph specs configured");
  return sources;
}

void stage_generate(const RunConfig& cfg, const fs::path& out_path) {
  if (cfg.tasks.empty()) throw std::invalid_argument("generate: no tasks configured");
  std::ostringstream out;
  for (TaskKind kind : cfg.tasks) {
    auto sources = build_source_graphs(cfg, kind);
    InstanceConstraints constraints = cfg.constraints;
    uint64_t task_seed = SplitMix64::stream(cfg.seed, std::hash<std::string>{}(to_string(kind))).next_u64();
    auto instances = make_instances(sources, kind, cfg.instances_per_task, constraints, task_seed);
    for (const auto& inst : instances) out << inst.to_jsonl() << "\n";
  }
  write_file(out_path, out.str());
}

// ---------------------------------------------------------------- prompt ---

std::vector<TaskInstance> load_instances(const fs::path& path, bool revalidate) {
  std::vector<TaskInstance> instances;
  for (const auto& line : read_lines(path)) instances.push_back(TaskInstance::from_jsonl(line));
  if (revalidate) {
    for (const auto& inst : instances) {
      if (inst.kind == TaskKind::kNodeClassification) {
        if (inst.node_labels.empty() ||
            inst.truth != Answer::of_label(inst.node_labels[inst.query.node]))
          throw std::runtime_error("instance " + inst.id + ": stored truth fails re-validation");
        continue;
      }
      if (solve(inst.graph, inst.kind, inst.query) != inst.truth)
        throw std::runtime_error("instance " + inst.id + ": stored truth fails re-validation");
      if (inst.meta.distance && inst.query.kind == Query::Kind::kPair) {
        auto d = shortest_path_len(inst.graph, inst.query.source, inst.query.target);
        if (!d || *d != *inst.meta.distance)
          throw std::runtime_error("instance " + inst.id + ": stored distance fails re-validation");
      }
    }
  }
  return instances;
}

void stage_prompt(const RunConfig& cfg, const fs::path& instances_path, const fs::path& out_path) {
  auto instances = load_instances(instances_path, /*revalidate=*/true);
  // few-shot pools keyed by (task, graph_type)
  std::map<std::pair<std::string, std::string>, std::vector<TaskInstance>> pools;
  for (const auto& inst : instances)
    pools[{to_string(inst.kind), inst.meta.graph_type}].push_back(inst);

  std::ostringstream out;
  for (size_t vi = 0; vi < cfg.variants.size(); ++vi) {
    EncodingVariant variant = cfg.variants[vi];
    for (size_t ii = 0; ii < instances.size(); ++ii) {
      const TaskInstance& inst = instances[ii];
      const auto& pool = pools[{to_string(inst.kind), inst.meta.graph_type}];
      int k = std::min<int>(cfg.prompt.few_shot_count, static_cast<int>(pool.size()) - 1);
      k = std::max(k, 0);
      uint64_t fs_seed = SplitMix64::stream(cfg.seed, 0xfe50 + vi * 1000003 + ii).next_u64();
      auto shots = build_few_shot(pool, k, inst.id, variant, cfg.prompt, cfg.palette, fs_seed);
      auto bundle = assemble_prompt(inst, variant, cfg.prompt, cfg.palette, shots);
      out << bundle.to_jsonl() << "\n";
    }
  }
  write_file(out_path, out.str());
}

// ------------------------------------------------------------------- run ---

struct PromptRecord {
  std::string id;
  std::string variant;
  std::string system_text;
  std::string user_text;
};

void stage_run(const RunConfig& cfg, const fs::path& prompts_path, const fs::path& instances_path,
               const fs::path& out_path) {
  std::vector<PromptRecord> prompts;
  for (const auto& line : read_lines(prompts_path)) {
    auto j = nlohmann::json::parse(line);
    prompts.push_back({j.at("id"), j.at("variant"), j.at("system"), j.at("user")});
  }
  Backend backend = cfg.backend;
  if (backend.kind == Backend::Kind::kMockOracle) {
    for (const auto& inst : load_instances(instances_path, false))
      backend.oracle_truths[inst.id] = inst.truth.to_text();
  }
  std::unique_ptr<ResponseCache> cache;
  if (cfg.cache_path) cache = std::make_unique<ResponseCache>(*cfg.cache_path);

  std::vector<nlohmann::json> responses(prompts.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= prompts.size() || failed.load()) return;
      try {
        ChatRequest req;
        req.model = cfg.model;
        req.temperature = cfg.temperature;
        req.max_tokens = cfg.max_tokens;
        req.instance_id = prompts[i].id;
        req.messages = {{"system", prompts[i].system_text}, {"user", prompts[i].user_text}};
        ChatResponse resp = cache ? cached_send(req, backend, *cache, cfg.retry)
                                  : send(req, backend, cfg.retry);
        nlohmann::json j;
        j["id"] = prompts[i].id;
        j["variant"] = prompts[i].variant;
        j["model"] = cfg.model;
        j["text"] = resp.text;
        j["backend"] = resp.backend;
        j["cached"] = resp.cached;
        responses[i] = std::move(j);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
      }
    }
  };
  int workers = std::max(1, cfg.parallelism);
  std::vector<std::thread> threads;
  for (int i = 0; i < workers; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failed) throw std::runtime_error("run stage failed: " + first_error);

  // results written in prompt order regardless of completion order
  std::ostringstream out;
  for (const auto& j : responses) out << j.dump() << "\n";
  write_file(out_path, out.str());
}

// ----------------------------------------------------------------- parse ---

void stage_parse(const RunConfig& cfg, const fs::path& responses_path,
                 const fs::path& instances_path, const fs::path& out_path) {
  auto instances = load_instances(instances_path, false);
  std::map<std::string, const TaskInstance*> by_id;
  for (const auto& inst : instances) by_id[inst.id] = &inst;

  std::ostringstream out;
  for (const auto& line : read_lines(responses_path)) {
    auto j = nlohmann::json::parse(line);
    std::string id = j.at("id");
    auto it = by_id.find(id);
    if (it == by_id.end()) throw std::runtime_error("parse: response for unknown instance " + id);
    const TaskInstance& inst = *it->second;
    std::vector<std::string> label_set(inst.node_labels.begin(), inst.node_labels.end());
    std::sort(label_set.begin(), label_set.end());
    label_set.erase(std::unique(label_set.begin(), label_set.end()), label_set.end());
    ParsedAnswer parsed = parse_answer(j.at("text").get<std::string>(), inst.kind, label_set);
    Score score = score_instance(parsed, inst.truth, inst.kind);
    InstanceResult r;
    r.instance_id = id;
    r.variant = j.value("variant", "");
    r.model = j.value("model", cfg.model);
    r.kind = inst.kind;
    r.parsed = parsed.parsed;
    r.correct = score.correct;
    r.norm_error = score.norm_error;
    r.predicted = parsed.parsed ? parsed.value.to_text() : "";
    r.truth = inst.truth.to_text();
    r.graph_type = inst.meta.graph_type;
    r.size = inst.meta.n;
    r.distance = inst.meta.distance;
    out << r.to_jsonl() << "\n";
  }
  write_file(out_path, out.str());
}

// ---------------------------------------------------------------- report ---

void stage_report(const fs::path& results_path, const fs::path& csv_path,
                  const fs::path& table_path, bool any_distance) {
  std::vector<InstanceResult> results;
  for (const auto& line : read_lines(results_path))
    results.push_back(InstanceResult::from_jsonl(line));
  std::vector<std::string> slicing = {"task", "variant", "graph_type", "size"};
  if (any_distance) slicing.push_back("distance_bin");
  Report report = aggregate(results, slicing);
  write_file(csv_path, report.to_csv());
  write_file(table_path, report.to_table());
}

// ---------------------------------------------------------------- verify ---

Graph random_tree(int n, SplitMix64& rng) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v)
    edges.push_back({static_cast<NodeId>(rng.next_below(v)), v});
  return Graph(n, edges);
}

bool stage_verify(const RunConfig& cfg, const fs::path& out_path) {
  const VerifyConfig& vc = cfg.verify;
  std::ostringstream out;
  bool ok = true;

  {  // ordered vs classic WL partition equivalence
    SplitMix64 rng = SplitMix64::stream(cfg.seed, 0x1);
    int mismatches = 0;
    for (int i = 0; i < vc.wl_graphs; ++i) {
      int n = 2 + static_cast<int>(rng.next_below(vc.wl_max_n - 1));
      double p = (i % 2 == 0) ? 0.2 : 0.5;
      GraphGenParams params{GraphKind::kErdosRenyi, n, p, 4, rng.next_u64()};
      Graph g = generate(params);
      auto trace = ordered_wl(g);
      auto classic = classic_wl_partition(g, n);
      size_t iters = std::min(trace.history.size(), classic.size());
      for (size_t t = 0; t < iters; ++t)
        if (partition_of(trace.history[t]) != classic[t]) ++mismatches;
    }
    out << "wl_partition_equivalence: graphs=" << vc.wl_graphs << " mismatches=" << mismatches
        << "\n";
    ok = ok && mismatches == 0;
  }

  {  // degree consistency on random graphs
    SplitMix64 rng = SplitMix64::stream(cfg.seed, 0x2);
    std::vector<Graph> graphs;
    for (int i = 0; i < vc.degree_graphs; ++i) {
      int n = 2 + static_cast<int>(rng.next_below(vc.degree_max_n - 1));
      GraphGenParams params{GraphKind::kErdosRenyi, n, 0.3, 4, rng.next_u64()};
      graphs.push_back(generate(params));
    }
    auto report = verify_theorem1(graphs, 1, {});
    out << "degree_consistency: graphs=" << report.graphs_checked
        << " pairs=" << report.degree_pairs_checked
        << " violations=" << report.degree_violations << "\n";
    ok = ok && report.degree_violations == 0;
  }

  {  // shell dominance on random trees, per depth
    for (int depth : vc.depths) {
      SplitMix64 rng = SplitMix64::stream(cfg.seed, 0x30 + depth);
      std::vector<Graph> trees;
      for (int i = 0; i < vc.tree_graphs; ++i) {
        int n = 2 + static_cast<int>(rng.next_below(vc.tree_max_n - 1));
        trees.push_back(random_tree(n, rng));
      }
      std::vector<std::vector<double>> alphas(2);
      for (int k = 0; k <= depth; ++k) {
        alphas[0].push_back(1.0);
        alphas[1].push_back(std::pow(0.5, k));
      }
      auto report = verify_theorem1(trees, depth, alphas);
      out << "shell_dominance depth=" << depth << ": trees=" << report.trees_checked
          << " pairs=" << report.dominance_pairs_checked
          << " label_violations=" << report.label_dominance_violations
          << " connectivity_violations=" << report.connectivity_violations << "\n";
      ok = ok && report.label_dominance_violations == 0 && report.connectivity_violations == 0;
    }
  }

  {  // production oracles vs brute force on small connected graphs
    SplitMix64 rng = SplitMix64::stream(cfg.seed, 0x4);
    int checked = 0, disagreements = 0;
    while (checked < vc.oracle_instances) {
      int n = 3 + static_cast<int>(rng.next_below(vc.oracle_max_n - 2));
      GraphGenParams params{GraphKind::kErdosRenyi, n, 0.5, 4, rng.next_u64()};
      Graph g = generate(params);
      NodeId s = static_cast<NodeId>(rng.next_below(n));
      NodeId t = static_cast<NodeId>(rng.next_below(n));
      if (s == t) continue;
      ++checked;
      if (count_triangles(g) != reference::count_triangles_brute(g)) ++disagreements;
      if (node_on_cycle(g, s) != reference::node_on_cycle_brute(g, s)) ++disagreements;
      if (reachable(g, s, t) != reference::reachable_union_find(g, s, t)) ++disagreements;
      if (shortest_path_len(g, s, t) != reference::shortest_path_floyd(g, s, t)) ++disagreements;
      if (g.num_edges() <= 24 &&
          max_flow_unit(g, s, t) != reference::max_flow_min_cut_brute(g, s, t))
        ++disagreements;
    }
    out << "oracle_equivalence: instances=" << checked << " disagreements=" << disagreements
        << "\n";
    ok = ok && disagreements == 0;
  }

  out << (ok ? "VERIFY PASS\n" : "VERIFY FAIL\n");
  write_file(out_path, out.str());
  return ok;
}

}  // namespace

Stage stage_from_string(const std::string& s) {
  if (s == "generate") return Stage::kGenerate;
  if (s == "prompt") return Stage::kPrompt;
  if (s == "run") return Stage::kRun;
  if (s == "parse") return Stage::kParse;
  if (s == "report") return Stage::kReport;
  if (s == "verify") return Stage::kVerify;
  throw std::invalid_argument("unknown stage: " + s);
}

StageOutcome run_stage(Stage stage, const RunConfig& config, bool force) {
  fs::path dir(config.output_dir);
  fs::create_directories(dir);
  Manifest manifest(dir, config.config_hash, config.seed);
  if (!manifest.config_matches() && !force)
    throw std::runtime_error(
        "manifest config hash does not match this config (stale outputs?); rerun with --force to "
        "override");

  fs::path instances = dir / "instances.jsonl";
  fs::path prompts = dir / "prompts.jsonl";
  fs::path responses = dir / "responses.jsonl";
  fs::path results = dir / "results.jsonl";
  fs::path report_csv = dir / "report.csv";
  fs::path report_txt = dir / "report.txt";
  fs::path verify_txt = dir / "verify.txt";

  std::vector<fs::path> inputs, outputs;
  switch (stage) {
    case Stage::kGenerate: outputs = {instances}; break;
    case Stage::kPrompt: inputs = {instances}; outputs = {prompts}; break;
    case Stage::kRun: inputs = {prompts, instances}; outputs = {responses}; break;
    case Stage::kParse: inputs = {responses, instances}; outputs = {results}; break;
    case Stage::kReport: inputs = {results}; outputs = {report_csv, report_txt}; break;
    case Stage::kVerify: outputs = {verify_txt}; break;
  }
  for (const auto& f : inputs)
    if (!fs::exists(f))
      throw std::runtime_error(stage_name(stage) + ": missing upstream artifact " + f.string());

  StageOutcome outcome;
  std::string name = stage_name(stage);
  if (!force && manifest.stage_up_to_date(name, inputs, outputs)) {
    outcome.skipped = true;
    outcome.summary = name + ": up to date";
    for (const auto& f : outputs) outcome.outputs.push_back(f.string());
    return outcome;
  }

  switch (stage) {
    case Stage::kGenerate: stage_generate(config, instances); break;
    case Stage::kPrompt: stage_prompt(config, instances, prompts); break;
    case Stage::kRun: stage_run(config, prompts, instances, responses); break;
    case Stage::kParse: stage_parse(config, responses, instances, results); break;
    case Stage::kReport: {
      bool any_distance = false;
      for (const auto& line : read_lines(results))
        if (nlohmann::json::parse(line).contains("distance")) any_distance = true;
      stage_report(results, report_csv, report_txt, any_distance);
      break;
    }
    case Stage::kVerify: outcome.ok = stage_verify(config, verify_txt); break;
  }
  manifest.record_stage(name, inputs, outputs);
  for (const auto& f : outputs) outcome.outputs.push_back(f.string());
  outcome.summary = name + ": done";
  return outcome;
}

}  // namespace owlbench
