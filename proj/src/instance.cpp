#include <stdexcept>

#include "json.hpp"
#include "owlbench/oracles.hpp"

namespace owlbench {

namespace {

nlohmann::json graph_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.num_nodes();
  auto arr = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) arr.push_back({u, v});
  j["edges"] = arr;
  return j;
}

nlohmann::json truth_json(const Answer& a) {
  switch (a.kind) {
    case Answer::Kind::kBool: return a.b;
    case Answer::Kind::kInt: return a.i;
    case Answer::Kind::kNoPath: return "inf";
    case Answer::Kind::kLabel: return a.label;
  }
  throw std::logic_error("truth_json: bad answer kind");
}

Answer truth_from_json(const nlohmann::json& j, TaskKind kind) {
  switch (kind) {
    case TaskKind::kCycleCheck:
    case TaskKind::kReachability:
      return Answer::of_bool(j.get<bool>());
    case TaskKind::kTriangleCount:
    case TaskKind::kMaxFlow:
      return Answer::of_int(j.get<long long>());
    case TaskKind::kShortestPath:
      if (j.is_string()) return Answer::no_path();
      return Answer::of_int(j.get<long long>());
    case TaskKind::kNodeClassification:
      return Answer::of_label(j.get<std::string>());
  }
  throw std::logic_error("truth_from_json: bad task kind");
}

}  // namespace

std::string TaskInstance::to_jsonl() const {
  nlohmann::json j;
  j["id"] = id;
  j["task"] = to_string(kind);
  j["graph"] = graph_json(graph);
  switch (query.kind) {
    case Query::Kind::kNone: j["query"] = nullptr; break;
    case Query::Kind::kNode: j["query"] = {{"node", query.node}}; break;
    case Query::Kind::kPair: j["query"] = {{"pair", {query.source, query.target}}}; break;
  }
  j["truth"] = truth_json(truth);
  nlohmann::json m;
  m["graph_type"] = meta.graph_type;
  m["n"] = meta.n;
  m["seed"] = meta.seed;
  if (meta.distance) m["distance"] = *meta.distance;
  if (meta.diameter) m["diameter"] = *meta.diameter;
  for (const auto& [k, v] : meta.extra) m[k] = v;
  j["meta"] = m;
  if (!node_labels.empty()) j["node_labels"] = node_labels;
  return j.dump();
}

TaskInstance TaskInstance::from_jsonl(const std::string& line) {
  auto j = nlohmann::json::parse(line);
  TaskInstance inst;
  inst.id = j.at("id").get<std::string>();
  inst.kind = task_kind_from_string(j.at("task").get<std::string>());
  {
    std::vector<Edge> edges;
    const auto& gj = j.at("graph");
    for (const auto& e : gj.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    inst.graph = Graph(gj.at("n").get<int>(), edges);
  }
  const auto& q = j.at("query");
  if (q.is_null()) {
    inst.query = Query::none();
  } else if (q.contains("node")) {
    inst.query = Query::for_node(q.at("node").get<int>());
  } else {
    inst.query = Query::for_pair(q.at("pair").at(0).get<int>(), q.at("pair").at(1).get<int>());
  }
  inst.truth = truth_from_json(j.at("truth"), inst.kind);
  if (j.contains("meta")) {
    const auto& m = j.at("meta");
    if (m.contains("graph_type")) inst.meta.graph_type = m.at("graph_type").get<std::string>();
    if (m.contains("n")) inst.meta.n = m.at("n").get<int>();
    if (m.contains("seed")) inst.meta.seed = m.at("seed").get<uint64_t>();
    if (m.contains("distance")) inst.meta.distance = m.at("distance").get<int>();
    if (m.contains("diameter")) inst.meta.diameter = m.at("diameter").get<int>();
  }
  if (j.contains("node_labels")) inst.node_labels = j.at("node_labels").get<std::vector<std::string>>();
  return inst;
}

}  // namespace owlbench
