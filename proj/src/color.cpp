#include "owlbench/color.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace owlbench {

void Palette::validate() const {
  if (entries.size() < 2) throw std::invalid_argument("palette: need at least two anchors");
  if (!(h_min < h_max)) throw std::invalid_argument("palette: h_min must be below h_max");
  if (entries.front().hue_anchor != h_min || entries.back().hue_anchor != h_max)
    throw std::invalid_argument("palette: anchors must span [h_min, h_max]");
  std::set<std::string> names;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].hue_anchor <= entries[i - 1].hue_anchor)
      throw std::invalid_argument("palette: anchors must be strictly increasing");
    if (!names.insert(entries[i].name).second)
      throw std::invalid_argument("palette: duplicate name " + entries[i].name);
  }
}

Palette Palette::default_palette() {
  Palette p;
  const char* names[] = {"red",  "crimson", "orange", "gold",         "yellow",
                         "lime", "green",   "spring green", "teal",   "cyan"};
  for (int i = 0; i < 10; ++i) p.entries.push_back({names[i], 20.0 * i});
  p.h_min = 0;
  p.h_max = 180;
  p.validate();
  return p;
}

Palette Palette::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Palette p;
  for (const auto& e : j)
    p.entries.push_back({e.at("name").get<std::string>(), e.at("hue").get<double>()});
  if (!p.entries.empty()) {
    p.h_min = p.entries.front().hue_anchor;
    p.h_max = p.entries.back().hue_anchor;
  }
  p.validate();
  return p;
}

double hue_of(double x, double h_min, double h_max) {
  if (x < 0 || x > 1) throw std::invalid_argument("hue_of: x outside [0,1]");
  if (!(h_min < h_max)) throw std::invalid_argument("hue_of: empty hue interval");
  return h_min + (h_max - h_min) * x;
}

const std::string& hue_to_name(double h, const Palette& palette) {
  if (h < palette.h_min || h > palette.h_max)
    throw std::invalid_argument("hue_to_name: hue out of palette bounds");
  const PaletteEntry* best = &palette.entries.front();
  double best_dist = std::abs(h - best->hue_anchor);
  for (const auto& e : palette.entries) {
    double d = std::abs(h - e.hue_anchor);
    if (d < best_dist) {  // strict: ties keep the lower anchor
      best = &e;
      best_dist = d;
    }
  }
  return best->name;
}

ColorAssignment assign_colors(const LabelVector& labels, const Palette& palette) {
  auto normalized = normalize_labels(labels);
  ColorAssignment out;
  out.hues.reserve(labels.size());
  out.names.reserve(labels.size());
  for (double x : normalized) {
    double h = hue_of(x, palette.h_min, palette.h_max);
    out.hues.push_back(h);
    out.names.push_back(hue_to_name(h, palette));
  }
  return out;
}

}  // namespace owlbench
