#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "venn/core.hpp"

namespace venn {

enum class LayoutMode { Radial, Cylindrical };
enum class Smoothing { Polyline, Curve };

struct LayoutOptions {
  LayoutMode mode = LayoutMode::Radial;
  double canvas = 800.0;   // square edge (radial) or width (cylindrical)
  double spacing = 0.0;    // ring/row spacing; 0 picks a size that fits
  Smoothing smoothing = Smoothing::Polyline;
  bool shade_by_cardinality = false;
  std::vector<std::string> palette;  // stroke colors, cycled over curves
};

// Schematic drawing of the full diagram: crossing t sits at angle
// 2*pi*t/(2^n-2) from 12 o'clock clockwise (radial) or at abscissa t
// (cylindrical); strands run at their rank's radius between crossings and
// trade places at crossings. Exactly n path elements, one per curve.
// Byte-identical output for identical input and options.
std::string render_svg(const ClusterForm& form, const LayoutOptions& options = {});

struct DualGraph {
  int n = 0;
  std::vector<RegionSet> vertices;                       // all 2^n subsets
  std::vector<std::pair<RegionSet, RegionSet>> edges;    // smaller mask first
};

enum class DualFormat { Dot, EdgeList };

// Geometric dual: one vertex per region, one edge per pair of faces that
// share a curve segment, collected during the sweep as the pre-swap pairs
// (gap r-1 set, gap r set) and (gap r set, gap r+1 set) at each crossing.
// Always 2(2^n-2) edges, every edge at Hamming distance 1.
DualGraph build_dual(const ClusterForm& form);

// DOT (undirected) or sorted "BITSTRING BITSTRING" edge lines. Vertex labels
// are n-character binary strings, leftmost character = curve 1.
std::string export_dual(const ClusterForm& form, DualFormat format);

std::string region_label(RegionSet set, int n);

struct CensusReport {
  int n = 0;
  std::vector<std::uint64_t> cluster_k_counts;  // index k-1; k = 1..n-1
  std::vector<std::uint64_t> left_k_points;     // index k-1; k = 1..n-2
  std::size_t crosscut_count = 0;
  bool crosscut_symmetric = false;
  bool polar_symmetric = false;
};

// Per-cluster region counts by cardinality (binom(n,k)/n each), k-point
// counts left of the crosscut, and the symmetry flags.
CensusReport census_report(const ClusterForm& form);

}  // namespace venn
