#include <stdexcept>
#include "doctest.h"
#include "owlbench/color.hpp"

using namespace owlbench;

TEST_CASE("hue_of is the linear map on [0,1]") {
  CHECK(hue_of(0, 0, 180) == doctest::Approx(0));
  CHECK(hue_of(1, 0, 180) == doctest::Approx(180));
  CHECK(hue_of(0.5, 0, 180) == doctest::Approx(90));
  CHECK_THROWS_AS(hue_of(1.5, 0, 180), std::invalid_argument);
  CHECK_THROWS_AS(hue_of(-0.1, 0, 180), std::invalid_argument);
}

TEST_CASE("hue_to_name: endpoints, ties toward the lower anchor") {
  Palette p = Palette::default_palette();
  CHECK(hue_to_name(0, p) == "red");
  CHECK(hue_to_name(180, p) == "cyan");
  CHECK(hue_to_name(90, p) == "yellow");  // equidistant from 80 and 100
  CHECK(hue_to_name(91, p) == "lime");
  CHECK_THROWS_AS(hue_to_name(181, p), std::invalid_argument);
}

TEST_CASE("assign_colors composes normalize, hue, name") {
  Palette p = Palette::default_palette();
  auto c = assign_colors({0, 1, 0}, p);
  CHECK(c.names == std::vector<std::string>{"red", "cyan", "red"});
  CHECK(c.hues == std::vector<double>{0, 180, 0});

  auto flat = assign_colors({7, 7, 7, 7}, p);
  for (const auto& name : flat.names) CHECK(name == "red");
}

TEST_CASE("equal labels always share a color; hue order follows label order") {
  Palette p = Palette::default_palette();
  LabelVector labels = {0, 3, 3, 1, 9, 0, 5};
  auto c = assign_colors(labels, p);
  for (size_t u = 0; u < labels.size(); ++u)
    for (size_t v = 0; v < labels.size(); ++v) {
      if (labels[u] == labels[v]) {
        CHECK(c.names[u] == c.names[v]);
        CHECK(c.hues[u] == c.hues[v]);
      }
      if (labels[u] < labels[v]) CHECK(c.hues[u] <= c.hues[v]);
    }
}

TEST_CASE("palette validation and json loading") {
  CHECK_THROWS_AS(Palette::from_json(R"([{"name":"red","hue":0}])"), std::invalid_argument);
  CHECK_THROWS_AS(Palette::from_json(R"([{"name":"red","hue":0},{"name":"red","hue":10}])"),
                  std::invalid_argument);
  Palette p = Palette::from_json(R"([{"name":"red","hue":0},{"name":"blue","hue":100}])");
  CHECK(p.h_max == 100);
  CHECK(hue_to_name(60, p) == "blue");
}
