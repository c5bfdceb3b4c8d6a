#pragma once

#include <string>
#include <vector>

#include "owlbench/wl.hpp"

namespace owlbench {

struct PaletteEntry {
  std::string name;
  double hue_anchor = 0;  // degrees
};

// Ordered hue anchors covering [h_min, h_max]; first anchor = h_min, last =
// h_max, anchors strictly increasing, names unique.
struct Palette {
  std::vector<PaletteEntry> entries;
  double h_min = 0;
  double h_max = 180;

  void validate() const;
  // 10 anchors at 0,20,...,180 degrees, red at the minimum label through cyan
  // at the maximum.
  static Palette default_palette();
  static Palette from_json(const std::string& text);
};

struct ColorAssignment {
  std::vector<std::string> names;
  std::vector<double> hues;
};

// Linear map h_min + (h_max - h_min) * x for x in [0,1].
double hue_of(double x, double h_min, double h_max);

// Nearest anchor, ties toward the lower anchor.
const std::string& hue_to_name(double h, const Palette& palette);

// normalize -> hue -> name composition over a label vector.
ColorAssignment assign_colors(const LabelVector& labels, const Palette& palette);

}  // namespace owlbench
