#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "diagrams.hpp"
#include "venn/artifacts.hpp"
#include "venn/core.hpp"

using namespace venn;

namespace {

ClusterForm form_for(int n) {
  if (n == 7) return {DiagramOrder(7), testdata::kM4Alpha};
  if (n == 11) return {DiagramOrder(11), testdata::kNewrozAlpha};
  return {DiagramOrder(n), {}};
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

bool connected(const DualGraph& dual) {
  std::map<RegionSet, std::vector<RegionSet>> adjacency;
  for (const auto& [a, b] : dual.edges) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  std::set<RegionSet> seen{0};
  std::vector<RegionSet> stack{0};
  while (!stack.empty()) {
    const RegionSet v = stack.back();
    stack.pop_back();
    for (const RegionSet w : adjacency[v]) {
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == dual.vertices.size();
}

}  // namespace

TEST_CASE("dual graph invariants") {
  for (int n : {3, 5, 7, 11}) {
    const DualGraph dual = build_dual(form_for(n));
    CHECK(dual.vertices.size() == (std::size_t{1} << n));
    CHECK(dual.edges.size() == 2 * ((std::size_t{1} << n) - 2));
    std::set<std::pair<RegionSet, RegionSet>> distinct;
    std::map<RegionSet, int> degree;
    for (const auto& [a, b] : dual.edges) {
      CHECK(a < b);
      CHECK(std::popcount(a ^ b) == 1);
      distinct.insert({a, b});
      ++degree[a];
      ++degree[b];
    }
    CHECK(distinct.size() == dual.edges.size());
    for (const auto& [vertex, d] : degree) CHECK(d <= n);
    CHECK(connected(dual));
  }
}

TEST_CASE("three-curve dual is the cube") {
  const DualGraph dual = build_dual(form_for(3));
  REQUIRE(dual.edges.size() == 12);
  std::map<RegionSet, int> degree;
  for (const auto& [a, b] : dual.edges) {
    ++degree[a];
    ++degree[b];
  }
  for (RegionSet v = 0; v < 8; ++v) CHECK(degree[v] == 3);
}

TEST_CASE("region labels") {
  CHECK(region_label(0, 3) == "000");
  CHECK(region_label(0b001, 3) == "100");  // leftmost character is curve 1
  CHECK(region_label(0b100, 3) == "001");
  CHECK(region_label(0b1011, 4) == "1101");
}

TEST_CASE("dual export formats") {
  const std::string edges = export_dual(form_for(3), DualFormat::EdgeList);
  std::istringstream in(edges);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  CHECK(lines.size() == 12);
  CHECK(std::is_sorted(lines.begin(), lines.end()));
  CHECK(lines.front() == "000 001");

  const std::string dot = export_dual(form_for(3), DualFormat::Dot);
  CHECK(dot.rfind("graph dual {", 0) == 0);
  CHECK(count_occurrences(dot, " -- ") == 12);
  CHECK(dot.find("\"000\" -- \"001\";") != std::string::npos);
}

TEST_CASE("artifacts refuse invalid diagrams") {
  const ClusterForm bad{DiagramOrder(7), {4, 3, 2, 3}};
  CHECK_THROWS_AS(build_dual(bad), Error);
  CHECK_THROWS_AS(render_svg(bad, {}), Error);
  CHECK_THROWS_AS(census_report(bad), Error);
}

TEST_CASE("render output shape") {
  for (int n : {3, 7}) {
    const std::string svg = render_svg(form_for(n), {});
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(svg, "id=\"curve-") == static_cast<std::size_t>(n));
    CHECK(svg.find("data-crossings=\"" + std::to_string((1 << n) - 2) + "\"") !=
          std::string::npos);
  }
}

TEST_CASE("render determinism") {
  LayoutOptions options;
  options.shade_by_cardinality = true;
  options.smoothing = Smoothing::Curve;
  CHECK(render_svg(form_for(7), options) == render_svg(form_for(7), options));
  options.mode = LayoutMode::Cylindrical;
  CHECK(render_svg(form_for(7), options) == render_svg(form_for(7), options));
  CHECK(render_svg(form_for(7), options) != render_svg(form_for(7), {}));
}

TEST_CASE("render rejects unusable layouts") {
  LayoutOptions options;
  options.spacing = 500.0;  // cannot fit seven rings in an 800px canvas
  CHECK_THROWS_AS(render_svg(form_for(7), options), Error);
}

TEST_CASE("census report") {
  const CensusReport seven = census_report(form_for(7));
  CHECK(seven.cluster_k_counts == std::vector<std::uint64_t>{1, 3, 5, 5, 3, 1});
  CHECK(seven.left_k_points == std::vector<std::uint64_t>{1, 2, 3, 2, 1});
  CHECK(seven.crosscut_count == 7);
  CHECK(seven.crosscut_symmetric);
  CHECK_FALSE(seven.polar_symmetric);

  const CensusReport eleven = census_report(form_for(11));
  std::uint64_t total = 0;
  for (int k = 1; k <= 10; ++k) {
    CHECK(eleven.cluster_k_counts[static_cast<std::size_t>(k) - 1] ==
          binomial(11, k) / 11);
    total += eleven.cluster_k_counts[static_cast<std::size_t>(k) - 1];
  }
  CHECK(total == 186);
  CHECK(eleven.crosscut_count == 11);
  CHECK(eleven.crosscut_symmetric);
  CHECK_FALSE(eleven.polar_symmetric);
}
