#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "owlbench/oracles.hpp"

namespace owlbench {

struct ParsedAnswer {
  bool parsed = false;
  Answer value;
  std::string raw_tail;  // text after the final marker, for audit
};

// Grammar: find the LAST "<<ANSWER>>"; yes/no (any case) -> bool,
// optional-sign integer -> int, inf/infinity -> no_path, otherwise the first
// token matched case-insensitively against label_set for classification.
// Total: never throws; failures come back as parsed = false.
ParsedAnswer parse_answer(const std::string& text, TaskKind kind,
                          const std::vector<std::string>& label_set = {});

struct Score {
  bool correct = false;
  double norm_error = 1.0;  // in [0,1]; 0 iff correct
};

// Reconstructed MAE convention: exact-match complement for bool/label,
// capped relative error min(1, |pred-truth| / max(truth,1)) for numerics,
// unparsed = 1.
Score score_instance(const ParsedAnswer& parsed, const Answer& truth, TaskKind kind);

struct InstanceResult {
  std::string instance_id;
  std::string variant;
  std::string model;
  TaskKind kind = TaskKind::kTriangleCount;
  bool parsed = false;
  bool correct = false;
  double norm_error = 1.0;
  std::string predicted;  // textual form, empty when unparsed
  std::string truth;
  // slice keys
  std::string graph_type;
  int size = 0;
  std::optional<int> distance;

  std::string to_jsonl() const;
  static InstanceResult from_jsonl(const std::string& line);
};

struct ReportRow {
  std::map<std::string, std::string> slice;  // dimension -> value
  int count = 0;
  double accuracy_all = 0;     // percent, all instances
  double accuracy_parsed = 0;  // percent, parsed only
  double mae = 0;
  double answered_rate = 0;  // percent
  std::optional<double> f1_macro;  // percent, classification slices
};

struct Report {
  std::vector<ReportRow> rows;

  std::string to_csv() const;
  std::string to_table() const;
};

// Slice dimensions: any of "task", "variant", "model", "graph_type", "size",
// "distance_bin". Distance slicing uses the four default bins.
Report aggregate(const std::vector<InstanceResult>& results,
                 const std::vector<std::string>& slicing);

}  // namespace owlbench
