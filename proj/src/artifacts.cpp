#include "venn/artifacts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "venn/validate.hpp"

namespace venn {

namespace {

void require_valid(const ClusterForm& form) {
  const ValidationReport report = validate_full(form);
  if (!report.valid) {
    throw Error(ErrorKind::InvalidInput,
                std::string("diagram invalid: ") + fail_reason_name(*report.reason));
  }
}

CrossingSequence full_sequence(const ClusterForm& form) {
  const CrossingSequence sigma = build_sigma(form);
  CrossingSequence full;
  full.reserve(sigma.size() * static_cast<std::size_t>(form.order.n()));
  for (int pass = 0; pass < form.order.n(); ++pass) {
    full.insert(full.end(), sigma.begin(), sigma.end());
  }
  return full;
}

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

struct Point {
  double x = 0.0;
  double y = 0.0;
};

void append_path(std::string& out, const std::vector<Point>& pts, Smoothing smoothing,
                 bool closed, const std::string& attrs) {
  out += "<path d=\"";
  if (smoothing == Smoothing::Curve && pts.size() > 2) {
    // Quadratic chain anchored at segment midpoints, vertices as controls.
    const std::size_t count = pts.size();
    auto mid = [&](std::size_t i) {
      const Point& a = pts[i % count];
      const Point& b = pts[(i + 1) % count];
      return Point{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
    };
    const Point start = closed ? mid(count - 1) : pts.front();
    out += "M " + fmt(start.x) + " " + fmt(start.y);
    const std::size_t last = closed ? count : count - 1;
    for (std::size_t i = closed ? 0 : 1; i < last; ++i) {
      const Point anchor = (!closed && i + 1 == count) ? pts.back() : mid(i);
      out += " Q " + fmt(pts[i].x) + " " + fmt(pts[i].y) + " " + fmt(anchor.x) + " " +
             fmt(anchor.y);
    }
  } else {
    out += "M " + fmt(pts[0].x) + " " + fmt(pts[0].y);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      out += " L " + fmt(pts[i].x) + " " + fmt(pts[i].y);
    }
  }
  if (closed) out += " Z";
  out += "\" " + attrs + "/>\n";
}

const std::vector<std::string>& default_palette() {
  static const std::vector<std::string> colors = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
      "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a", "#637939"};
  return colors;
}

std::string shade_color(int cardinality, int n) {
  // Light at the rim, darker toward the center.
  const double f = static_cast<double>(cardinality) / n;
  const int level = 245 - static_cast<int>(f * 150.0);
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", level, level, 255 - level / 4);
  return buf;
}

// Rank of every curve just before each crossing, plus which two swap there.
struct Timeline {
  std::vector<std::vector<int>> rank_of;  // [t][curve] rank, 1-based
  std::vector<int> gap;                   // gap of crossing t
};

Timeline build_timeline(const ClusterForm& form, const CrossingSequence& full) {
  const int n = form.order.n();
  Timeline tl;
  tl.gap.assign(full.begin(), full.end());
  tl.rank_of.reserve(full.size());
  std::vector<int> curve_at(static_cast<std::size_t>(n));  // rank index -> curve
  for (int r = 0; r < n; ++r) curve_at[static_cast<std::size_t>(r)] = r;
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < full.size(); ++t) {
    for (int r = 0; r < n; ++r) rank[static_cast<std::size_t>(curve_at[static_cast<std::size_t>(r)])] = r + 1;
    tl.rank_of.push_back(rank);
    const int i = full[t];
    std::swap(curve_at[static_cast<std::size_t>(i - 1)], curve_at[static_cast<std::size_t>(i)]);
  }
  return tl;
}

}  // namespace

std::string render_svg(const ClusterForm& form, const LayoutOptions& options) {
  require_valid(form);
  const int n = form.order.n();
  const CrossingSequence full = full_sequence(form);
  const std::size_t m = full.size();  // 2^n - 2
  const Timeline tl = build_timeline(form, full);
  const auto& palette = options.palette.empty() ? default_palette() : options.palette;

  const bool radial = options.mode == LayoutMode::Radial;
  const double canvas = options.canvas;
  double spacing = options.spacing;
  if (spacing <= 0.0) {
    spacing = radial ? canvas / (2.0 * (n + 2)) : canvas / 4.0 / (n + 1);
  }
  if (radial && spacing * (n + 1) > canvas / 2.0) {
    throw Error(ErrorKind::ConfigError, "ring spacing does not fit the canvas");
  }

  const double center = canvas / 2.0;
  const double outer = center - spacing;  // rank-1 radius
  const double tau = 2.0 * std::numbers::pi;
  auto radial_point = [&](double t, double rank) {
    const double theta = tau * t / static_cast<double>(m);
    const double radius = outer - (rank - 1.0) * spacing;
    return Point{center + radius * std::sin(theta), center - radius * std::cos(theta)};
  };
  const double margin = spacing;
  const double xstep = (canvas - 2.0 * margin) / static_cast<double>(m);
  const double height = radial ? canvas : spacing * (n + 1) + 2.0 * margin;
  auto flat_point = [&](double t, double rank) {
    return Point{margin + t * xstep, margin + rank * spacing};
  };
  auto at = [&](double t, double rank) { return radial ? radial_point(t, rank) : flat_point(t, rank); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(canvas) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(canvas) + " " + fmt(height) +
         "\" data-curves=\"" + std::to_string(n) + "\" data-crossings=\"" + std::to_string(m) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  if (options.shade_by_cardinality) {
    // One face per open interval of a gap between its consecutive crossings.
    std::vector<std::vector<std::size_t>> hits(static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < m; ++t) hits[static_cast<std::size_t>(full[t])].push_back(t);
    for (int gap = 1; gap <= n - 1; ++gap) {
      const auto& times = hits[static_cast<std::size_t>(gap)];
      const std::string fill = shade_color(gap, n);
      for (std::size_t j = 0; j < times.size(); ++j) {
        const double t0 = static_cast<double>(times[j]);
        double t1 = static_cast<double>(times[(j + 1) % times.size()]);
        if (t1 <= t0) t1 += static_cast<double>(m);
        std::vector<Point> pts;
        const int steps = std::max(2, static_cast<int>(t1 - t0) + 1);
        for (int s = 0; s <= steps; ++s) {
          const double t = t0 + (t1 - t0) * s / steps;
          pts.push_back(at(t, static_cast<double>(gap)));
        }
        for (int s = steps; s >= 0; --s) {
          const double t = t0 + (t1 - t0) * s / steps;
          pts.push_back(at(t, static_cast<double>(gap + 1)));
        }
        append_path(svg, pts, Smoothing::Polyline, true,
                    "fill=\"" + fill + "\" stroke=\"none\"");
      }
    }
  }

  for (int curve = 0; curve < n; ++curve) {
    std::vector<Point> pts;
    pts.reserve(m);
    for (std::size_t t = 0; t < m; ++t) {
      const int gap = tl.gap[t];
      const int rank = tl.rank_of[t][static_cast<std::size_t>(curve)];
      const bool swapping = rank == gap || rank == gap + 1;
      const double draw_rank = swapping ? gap + 0.5 : static_cast<double>(rank);
      pts.push_back(at(static_cast<double>(t), draw_rank));
    }
    if (!radial) {
      const int rank0 = tl.rank_of[0][static_cast<std::size_t>(curve)];
      pts.push_back(at(static_cast<double>(m), static_cast<double>(rank0)));
    }
    const std::string color = palette[static_cast<std::size_t>(curve) % palette.size()];
    append_path(svg, pts, options.smoothing, radial,
                "id=\"curve-" + std::to_string(curve + 1) + "\" fill=\"none\" stroke=\"" + color +
                    "\" stroke-width=\"1.5\"");
  }

  svg += "</svg>\n";
  return svg;
}

DualGraph build_dual(const ClusterForm& form) {
  require_valid(form);
  const int n = form.order.n();
  DualGraph dual;
  dual.n = n;
  const RegionSet all = (RegionSet{1} << n) - 1;
  dual.vertices.reserve(static_cast<std::size_t>(all) + 1);
  for (RegionSet v = 0; v <= all; ++v) dual.vertices.push_back(v);

  const CrossingSequence full = full_sequence(form);
  std::set<std::pair<RegionSet, RegionSet>> seen;
  dual.edges.reserve(2 * full.size());
  SweepCursor cursor(n, identity_ranks(n));
  auto add_edge = [&](RegionSet a, RegionSet b) {
    if (a > b) std::swap(a, b);
    const bool fresh = seen.emplace(a, b).second;
    if (!fresh) {
      throw Error(ErrorKind::InvalidInput, "duplicate dual edge");
    }
    dual.edges.emplace_back(a, b);
  };
  for (const int gap : full) {
    add_edge(cursor.open_region(gap - 1), cursor.open_region(gap));
    add_edge(cursor.open_region(gap), cursor.open_region(gap + 1));
    cursor.step(gap);
  }
  std::sort(dual.edges.begin(), dual.edges.end());
  return dual;
}

std::string region_label(RegionSet set, int n) {
  std::string label(static_cast<std::size_t>(n), '0');
  for (int c = 0; c < n; ++c) {
    if (set & (RegionSet{1} << c)) label[static_cast<std::size_t>(c)] = '1';
  }
  return label;
}

std::string export_dual(const ClusterForm& form, DualFormat format) {
  const DualGraph dual = build_dual(form);
  std::vector<std::pair<std::string, std::string>> lines;
  lines.reserve(dual.edges.size());
  for (const auto& [a, b] : dual.edges) {
    std::string la = region_label(a, dual.n);
    std::string lb = region_label(b, dual.n);
    if (lb < la) std::swap(la, lb);
    lines.emplace_back(std::move(la), std::move(lb));
  }
  std::sort(lines.begin(), lines.end());

  std::string out;
  if (format == DualFormat::Dot) {
    out += "graph dual {\n";
    for (const auto& [a, b] : lines) {
      out += "  \"" + a + "\" -- \"" + b + "\";\n";
    }
    out += "}\n";
  } else {
    for (const auto& [a, b] : lines) {
      out += a + " " + b + "\n";
    }
  }
  return out;
}

CensusReport census_report(const ClusterForm& form) {
  require_valid(form);
  const int n = form.order.n();
  CensusReport report;
  report.n = n;
  report.cluster_k_counts.assign(static_cast<std::size_t>(n - 1), 0);
  const CrossingSequence sigma = build_sigma(form);
  for (const int gap : sigma) {
    ++report.cluster_k_counts[static_cast<std::size_t>(gap - 1)];
  }
  // k-points left of the crosscut: crossings of the rho-alpha stretch.
  report.left_k_points.assign(static_cast<std::size_t>(n - 2), 0);
  const CanonicalParts parts = canonical_parts(form.order);
  for (const int gap : parts.rho) ++report.left_k_points[static_cast<std::size_t>(gap - 1)];
  for (const int gap : form.alpha) ++report.left_k_points[static_cast<std::size_t>(gap - 1)];
  report.crosscut_count = find_crosscuts(form).size();
  report.crosscut_symmetric = check_crosscut_symmetry(form);
  report.polar_symmetric = check_polar_symmetry(form);
  return report;
}

}  // namespace venn
