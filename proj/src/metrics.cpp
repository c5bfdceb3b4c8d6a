#include "owlbench/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace owlbench {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// First whitespace-delimited token, trailing sentence punctuation stripped.
std::string first_token(const std::string& text) {
  size_t start = text.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) return "";
  size_t end = text.find_first_of(" \t\r\n", start);
  std::string tok = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
  while (!tok.empty() && (tok.back() == '.' || tok.back() == ',' || tok.back() == '!' ||
                          tok.back() == ';'))
    tok.pop_back();
  return tok;
}

std::optional<long long> parse_int(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  size_t i = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
  if (i == tok.size()) return std::nullopt;
  for (size_t j = i; j < tok.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(tok[j]))) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(tok.c_str(), &end, 10);
  if (errno == ERANGE || end != tok.c_str() + tok.size()) return std::nullopt;
  return v;
}

}  // namespace

ParsedAnswer parse_answer(const std::string& text, TaskKind kind,
                          const std::vector<std::string>& label_set) {
  static const std::string kMarker = "<<ANSWER>>";
  ParsedAnswer out;
  size_t pos = text.rfind(kMarker);
  if (pos == std::string::npos) return out;
  out.raw_tail = text.substr(pos + kMarker.size());
  std::string tok = first_token(out.raw_tail);
  if (tok.empty()) return out;
  std::string low = lower(tok);
  switch (kind) {
    case TaskKind::kCycleCheck:
    case TaskKind::kReachability:
      if (low == "yes") {
        out.parsed = true;
        out.value = Answer::of_bool(true);
      } else if (low == "no") {
        out.parsed = true;
        out.value = Answer::of_bool(false);
      }
      break;
    case TaskKind::kTriangleCount:
    case TaskKind::kMaxFlow:
      if (auto v = parse_int(tok)) {
        out.parsed = true;
        out.value = Answer::of_int(*v);
      }
      break;
    case TaskKind::kShortestPath:
      if (low == "inf" || low == "infinity") {
        out.parsed = true;
        out.value = Answer::no_path();
      } else if (auto v = parse_int(tok)) {
        out.parsed = true;
        out.value = Answer::of_int(*v);
      }
      break;
    case TaskKind::kNodeClassification:
      for (const auto& label : label_set)
        if (lower(label) == low) {
          out.parsed = true;
          out.value = Answer::of_label(label);
          break;
        }
      break;
  }
  return out;
}

Score score_instance(const ParsedAnswer& parsed, const Answer& truth, TaskKind kind) {
  switch (kind) {
    case TaskKind::kCycleCheck:
    case TaskKind::kReachability:
      if (truth.kind != Answer::Kind::kBool)
        throw std::invalid_argument("score_instance: truth type does not match boolean task");
      break;
    case TaskKind::kTriangleCount:
    case TaskKind::kMaxFlow:
      if (truth.kind != Answer::Kind::kInt)
        throw std::invalid_argument("score_instance: truth type does not match integer task");
      break;
    case TaskKind::kShortestPath:
      if (truth.kind != Answer::Kind::kInt && truth.kind != Answer::Kind::kNoPath)
        throw std::invalid_argument("score_instance: truth type does not match shortest_path");
      break;
    case TaskKind::kNodeClassification:
      if (truth.kind != Answer::Kind::kLabel)
        throw std::invalid_argument("score_instance: truth type does not match classification");
      break;
  }
  Score s;
  if (!parsed.parsed) return s;  // (false, 1)
  const Answer& pred = parsed.value;
  if (pred == truth) return {true, 0.0};
  // numeric distance only applies when both sides are finite integers
  if (pred.kind == Answer::Kind::kInt && truth.kind == Answer::Kind::kInt) {
    double denom = std::max<double>(static_cast<double>(truth.i), 1.0);
    s.norm_error = std::min(1.0, std::abs(static_cast<double>(pred.i - truth.i)) / denom);
  }
  return s;
}

std::string InstanceResult::to_jsonl() const {
  nlohmann::json j;
  j["id"] = instance_id;
  j["variant"] = variant;
  j["model"] = model;
  j["task"] = owlbench::to_string(kind);
  j["parsed"] = parsed;
  j["correct"] = correct;
  j["norm_error"] = norm_error;
  j["predicted"] = predicted;
  j["truth"] = truth;
  j["graph_type"] = graph_type;
  j["size"] = size;
  if (distance) j["distance"] = *distance;
  return j.dump();
}

InstanceResult InstanceResult::from_jsonl(const std::string& line) {
  auto j = nlohmann::json::parse(line);
  InstanceResult r;
  r.instance_id = j.at("id").get<std::string>();
  r.variant = j.value("variant", "");
  r.model = j.value("model", "");
  r.kind = task_kind_from_string(j.at("task").get<std::string>());
  r.parsed = j.at("parsed").get<bool>();
  r.correct = j.at("correct").get<bool>();
  r.norm_error = j.at("norm_error").get<double>();
  r.predicted = j.value("predicted", "");
  r.truth = j.value("truth", "");
  r.graph_type = j.value("graph_type", "");
  r.size = j.value("size", 0);
  if (j.contains("distance")) r.distance = j.at("distance").get<int>();
  return r;
}

namespace {

std::string distance_bin_name(std::optional<int> distance) {
  if (!distance) return "none";
  for (const auto& [lo, hi] : default_distance_bins()) {
    if (*distance >= lo && (hi < 0 || *distance <= hi)) {
      if (hi < 0) return "[" + std::to_string(lo) + ",inf)";
      return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
    }
  }
  return "<10";
}

std::string slice_value(const InstanceResult& r, const std::string& dim) {
  if (dim == "task") return to_string(r.kind);
  if (dim == "variant") return r.variant;
  if (dim == "model") return r.model;
  if (dim == "graph_type") return r.graph_type;
  if (dim == "size") return std::to_string(r.size);
  if (dim == "distance_bin") return distance_bin_name(r.distance);
  throw std::invalid_argument("aggregate: unknown slice dimension " + dim);
}

std::optional<double> f1_macro_percent(const std::vector<const InstanceResult*>& rs) {
  bool any = false;
  std::set<std::string> classes;
  for (const auto* r : rs)
    if (r->kind == TaskKind::kNodeClassification) {
      any = true;
      classes.insert(r->truth);  // classes absent from truth are excluded
    }
  if (!any) return std::nullopt;
  double sum = 0;
  for (const auto& c : classes) {
    long long tp = 0, fp = 0, fn = 0;
    for (const auto* r : rs) {
      if (r->kind != TaskKind::kNodeClassification) continue;
      bool truth_c = r->truth == c;
      bool pred_c = r->parsed && r->predicted == c;
      if (truth_c && pred_c) ++tp;
      else if (!truth_c && pred_c) ++fp;
      else if (truth_c && !pred_c) ++fn;
    }
    double denom = 2.0 * tp + fp + fn;
    sum += denom > 0 ? 2.0 * tp / denom : 0.0;
  }
  return 100.0 * sum / static_cast<double>(classes.size());
}

}  // namespace

Report aggregate(const std::vector<InstanceResult>& results,
                 const std::vector<std::string>& slicing) {
  std::map<std::vector<std::string>, std::vector<const InstanceResult*>> groups;
  for (const auto& r : results) {
    std::vector<std::string> key;
    for (const auto& dim : slicing) key.push_back(slice_value(r, dim));
    groups[key].push_back(&r);
  }
  Report report;
  for (const auto& [key, rs] : groups) {
    ReportRow row;
    for (size_t i = 0; i < slicing.size(); ++i) row.slice[slicing[i]] = key[i];
    row.count = static_cast<int>(rs.size());
    long long correct = 0, parsed = 0;
    double err = 0;
    for (const auto* r : rs) {
      correct += r->correct;
      parsed += r->parsed;
      err += r->norm_error;
    }
    row.accuracy_all = 100.0 * correct / row.count;
    row.accuracy_parsed = parsed > 0 ? 100.0 * correct / static_cast<double>(parsed) : 0.0;
    row.mae = err / row.count;
    row.answered_rate = 100.0 * parsed / row.count;
    row.f1_macro = f1_macro_percent(rs);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string Report::to_csv() const {
  std::ostringstream out;
  std::vector<std::string> dims;
  if (!rows.empty())
    for (const auto& [k, v] : rows.front().slice) dims.push_back(k);
  for (const auto& d : dims) out << d << ",";
  out << "N,accuracy_all,accuracy_parsed,mae,answered_rate,f1_macro\n";
  out.setf(std::ios::fixed);
  out.precision(4);
  for (const auto& row : rows) {
    for (const auto& d : dims) out << row.slice.at(d) << ",";
    out << row.count << "," << row.accuracy_all << "," << row.accuracy_parsed << "," << row.mae
        << "," << row.answered_rate << ",";
    if (row.f1_macro) out << *row.f1_macro;
    out << "\n";
  }
  return out.str();
}

std::string Report::to_table() const {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << "# metrics (MAE is the reconstructed normalized error, see README)\n";
  for (const auto& row : rows) {
    for (const auto& [k, v] : row.slice) out << k << "=" << v << " ";
    out << "| N=" << row.count << " acc=" << row.accuracy_all << "%"
        << " acc(parsed)=" << row.accuracy_parsed << "%"
        << " mae=" << std::setprecision(3) << row.mae << std::setprecision(2)
        << " answered=" << row.answered_rate << "%";
    if (row.f1_macro) out << " f1_macro=" << *row.f1_macro << "%";
    out << "\n";
  }
  return out.str();
}

}  // namespace owlbench
