#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "owlbench/color.hpp"
#include "owlbench/oracles.hpp"
#include "owlbench/wl.hpp"

namespace owlbench {

enum class EncodingVariant { kTlgA, kTlgF, kLOwl, kCOwl, kClOwl };

EncodingVariant variant_from_string(const std::string& s);
std::string to_string(EncodingVariant v);

bool variant_has_wl(EncodingVariant v);
bool variant_has_colors(EncodingVariant v);

struct PromptTemplateConfig {
  std::string system_text;
  // per-task instruction sentence, keyed by task kind name
  std::map<std::string, std::string> task_instructions;
  int few_shot_count = 2;
  bool adjacency_trailing_period = true;
  int structural_items_per_line = 5;
  std::vector<std::string> tlg_f_names;

  static PromptTemplateConfig defaults();
  std::string canonical_serialization() const;
};

struct MarkerSpan {
  std::string marker;
  size_t offset;  // byte offset in user_text
};

struct PromptBundle {
  std::string system_text;
  std::string user_text;
  EncodingVariant variant = EncodingVariant::kClOwl;
  std::string instance_id;
  std::string config_hash;
  std::vector<MarkerSpan> marker_index;  // in order of appearance

  bool has_marker(const std::string& marker) const;
  std::string to_jsonl() const;
};

struct FewShotExample {
  std::string instance_id;
  std::string rendered;
};

// Graph body text (marker line excluded). OWL variants emit adjacency lines
// "v: n1, n2, ..." with "(none)" for isolated nodes; TLG variants emit a node
// list plus edge tuples, with Friends character names for tlg_f.
std::string encode_graph(const Graph& g, EncodingVariant variant,
                         const PromptTemplateConfig& config);

// "<<WL_LABELS>>" and/or "<<COLORS>>" blocks per the variant; empty for TLG.
std::string structural_blocks(const LabelVector& labels, const ColorAssignment& colors,
                              EncodingVariant variant, const PromptTemplateConfig& config);

std::vector<FewShotExample> build_few_shot(const std::vector<TaskInstance>& pool, int k,
                                           const std::string& exclude_id,
                                           EncodingVariant variant,
                                           const PromptTemplateConfig& config,
                                           const Palette& palette, uint64_t seed);

PromptBundle assemble_prompt(const TaskInstance& instance, EncodingVariant variant,
                             const PromptTemplateConfig& config, const Palette& palette,
                             const std::vector<FewShotExample>& few_shot);

}  // namespace owlbench
