#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "venn/artifacts.hpp"
#include "venn/core.hpp"
#include "venn/search.hpp"
#include "venn/validate.hpp"

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int exit_code_for(const venn::Error& err) {
  switch (err.kind()) {
    case venn::ErrorKind::OrderRejected:
    case venn::ErrorKind::ConfigError:
      return kExitUsage;
    case venn::ErrorKind::IoError:
      return kExitIo;
    default:
      return kExitInvalid;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw venn::Error(venn::ErrorKind::IoError, "cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw venn::Error(venn::ErrorKind::IoError, "cannot write " + path);
  }
}

struct AlphaSource {
  std::string inline_csv;
  std::string file;

  // All alpha lines: one for --alpha, one per non-empty line for --alpha-file.
  std::vector<venn::CrossingSequence> load() const {
    std::vector<venn::CrossingSequence> alphas;
    if (!inline_csv.empty()) {
      alphas.push_back(venn::parse_sequence(inline_csv));
    } else {
      std::istringstream in(read_file(file));
      std::string line;
      while (std::getline(in, line)) {
        const std::string body = line.substr(0, line.find('#'));
        if (body.find_first_of("0123456789") == std::string::npos) continue;
        alphas.push_back(venn::parse_sequence(body));
      }
    }
    return alphas;
  }

  venn::CrossingSequence load_one() const {
    const std::vector<venn::CrossingSequence> alphas = load();
    if (alphas.empty()) return {};  // orders 3 and 5 have an empty alpha
    if (alphas.size() != 1) {
      throw venn::Error(venn::ErrorKind::ConfigError, "expected exactly one alpha sequence");
    }
    return alphas.front();
  }
};

void add_alpha_options(CLI::App* cmd, AlphaSource& src, bool required) {
  auto* a = cmd->add_option("--alpha", src.inline_csv, "alpha as comma-separated values");
  auto* f = cmd->add_option("--alpha-file", src.file, "file with one alpha per line");
  a->excludes(f);
  if (required) {
    // CLI11 cannot express "exactly one of" directly; checked after parse.
    cmd->callback([&src]() {
      if (src.inline_csv.empty() && src.file.empty()) {
        throw CLI::ValidationError("one of --alpha or --alpha-file is required");
      }
    });
  }
}

int run_search(int n, std::optional<std::uint64_t> limit, std::optional<std::int64_t> budget_ms,
               const std::string& prefix_csv, std::optional<int> split_depth,
               const std::string& unit, int threads, const std::string& checkpoint,
               const std::string& out_path) {
  venn::SearchConfig config;
  config.n = n;
  config.limit = limit;
  if (budget_ms) config.budget = std::chrono::milliseconds(*budget_ms);
  if (!prefix_csv.empty()) config.prefix = venn::parse_sequence(prefix_csv);
  config.split_depth = split_depth;
  config.unit_selector = unit;
  config.threads = threads;
  config.checkpoint_path = checkpoint;

  const venn::SearchOutcome outcome = venn::search(config, [](const venn::CrossingSequence& alpha) {
    std::cout << "found " << venn::format_sequence(alpha) << "\n";
  });
  const venn::SearchStats& stats = outcome.stats;
  std::cout << "valid " << stats.valid_count << ", nodes " << stats.nodes_visited << ", prunes "
            << (stats.prunes_multiset + stats.prunes_adjacent + stats.prunes_orbit +
                stats.prunes_final)
            << ", elapsed " << stats.elapsed.count() << " ms, "
            << (stats.complete ? "complete" : "interrupted") << "\n";

  if (!out_path.empty()) {
    std::string lines;
    for (const venn::CrossingSequence& alpha : outcome.alphas) {
      lines += venn::format_sequence(alpha) + "\n";
    }
    write_file(out_path, lines);
    nlohmann::json sidecar{{"n", n},
                           {"valid_count", stats.valid_count},
                           {"nodes", stats.nodes_visited},
                           {"elapsed_ms", stats.elapsed.count()},
                           {"complete", stats.complete},
                           {"version", 1}};
    write_file(out_path + ".json", sidecar.dump(2) + "\n");
  }
  return kExitValid;
}

int run_validate(int n, const AlphaSource& src, bool oracle_only) {
  const venn::DiagramOrder order(n);
  bool all_valid = true;
  for (const venn::CrossingSequence& alpha : src.load()) {
    const venn::ClusterForm form(order, alpha);
    const venn::ValidationReport full = venn::validate_full(form);
    venn::ValidationReport shown = full;
    if (!oracle_only) {
      const venn::ValidationReport fast = venn::validate_symmetric(form);
      if (fast.valid != full.valid) {
        throw venn::Error(venn::ErrorKind::InvalidInput,
                          "validator disagreement on " + venn::format_sequence(alpha));
      }
      shown = fast;
    }
    std::cout << venn::format_sequence(alpha) << ": "
              << (shown.valid ? "valid" : std::string("invalid (") +
                                              venn::fail_reason_name(*shown.reason) + ")")
              << ", census " << shown.census_size << "\n";
    all_valid = all_valid && shown.valid;
  }
  return all_valid ? kExitValid : kExitInvalid;
}

int run_render(int n, const AlphaSource& src, const std::string& layout, bool shade,
               double canvas, double spacing, const std::string& smooth,
               const std::string& out_path) {
  const venn::ClusterForm form{venn::DiagramOrder(n), src.load_one()};
  venn::LayoutOptions options;
  options.mode = layout == "cylinder" ? venn::LayoutMode::Cylindrical : venn::LayoutMode::Radial;
  options.shade_by_cardinality = shade;
  options.canvas = canvas;
  options.spacing = spacing;
  options.smoothing = smooth == "curve" ? venn::Smoothing::Curve : venn::Smoothing::Polyline;
  write_file(out_path, venn::render_svg(form, options));
  return kExitValid;
}

int run_dual(int n, const AlphaSource& src, const std::string& format,
             const std::string& out_path) {
  const venn::ClusterForm form{venn::DiagramOrder(n), src.load_one()};
  const venn::DualFormat fmt =
      format == "dot" ? venn::DualFormat::Dot : venn::DualFormat::EdgeList;
  const std::string text = venn::export_dual(form, fmt);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return kExitValid;
}

int run_info(int n, const AlphaSource& src) {
  const venn::DiagramOrder order(n);
  const venn::KPointTable table = venn::k_point_table(order);
  std::cout << "n " << n << "\n"
            << "cluster length " << order.cluster_length() << "\n"
            << "alpha length " << order.alpha_length() << "\n"
            << "full length " << order.cluster_length() * static_cast<std::uint64_t>(n) << "\n";
  std::cout << "R_k (k=1.." << n - 2 << "):";
  for (int k = 1; k <= n - 2; ++k) std::cout << " " << table.r(k);
  std::cout << "\nalpha copies (k=1.." << n - 2 << "):";
  for (int k = 1; k <= n - 2; ++k) std::cout << " " << table.alpha_copies(k);
  std::cout << "\npolar+crosscut possible: " << (venn::polar_crosscut_possible(n) ? "yes" : "no")
            << "\n";

  if (src.inline_csv.empty() && src.file.empty()) return kExitValid;
  const venn::ClusterForm form{order, src.load_one()};
  const venn::CensusReport report = venn::census_report(form);
  std::cout << "cluster k-region counts:";
  for (const std::uint64_t c : report.cluster_k_counts) std::cout << " " << c;
  std::cout << "\nk-points left of crosscut:";
  for (const std::uint64_t c : report.left_k_points) std::cout << " " << c;
  std::cout << "\ncrosscuts " << report.crosscut_count << "\n"
            << "crosscut symmetry: " << (report.crosscut_symmetric ? "yes" : "no") << "\n"
            << "polar symmetry: " << (report.polar_symmetric ? "yes" : "no") << "\n";
  return kExitValid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simple symmetric Venn diagrams: crossing sequences, search, artifacts"};
  app.require_subcommand(1);

  int n = 0;
  std::optional<std::uint64_t> limit;
  std::optional<std::int64_t> budget_ms;
  std::string prefix_csv;
  std::optional<int> split_depth;
  std::string unit;
  int threads = 1;
  std::string checkpoint;
  std::string out_path;
  AlphaSource alpha;
  bool oracle_only = false;
  std::string layout = "radial";
  bool shade = false;
  double canvas = 800.0;
  double spacing = 0.0;
  std::string smooth = "polyline";
  std::string format = "edges";
  std::string seq_csv;

  CLI::App* search = app.add_subcommand("search", "enumerate valid alpha sequences");
  search->add_option("-n", n, "number of curves")->required();
  search->add_option("--limit", limit, "stop after this many results");
  search->add_option("--budget", budget_ms, "time budget in milliseconds");
  search->add_option("--prefix", prefix_csv, "restrict alpha to this prefix");
  search->add_option("--split-depth", split_depth, "work unit prefix depth");
  search->add_option("--unit", unit, "keep unit shard I/J");
  search->add_option("--threads", threads, "worker thread count");
  search->add_option("--checkpoint", checkpoint, "checkpoint file (resumes if present)");
  search->add_option("--out", out_path, "write results and a JSON sidecar");

  CLI::App* validate = app.add_subcommand("validate", "check alpha sequences");
  validate->add_option("-n", n, "number of curves")->required();
  add_alpha_options(validate, alpha, true);
  validate->add_flag("--oracle", oracle_only, "run only the brute-force oracle");

  CLI::App* render = app.add_subcommand("render", "draw a diagram to SVG");
  render->add_option("-n", n, "number of curves")->required();
  add_alpha_options(render, alpha, true);
  render->add_option("--layout", layout, "radial or cylinder")
      ->check(CLI::IsMember({"radial", "cylinder"}));
  render->add_flag("--shade", shade, "shade faces by cardinality");
  render->add_option("--canvas", canvas, "canvas edge in pixels");
  render->add_option("--spacing", spacing, "ring spacing in pixels");
  render->add_option("--smooth", smooth, "polyline or curve")
      ->check(CLI::IsMember({"polyline", "curve"}));
  render->add_option("-o", out_path, "output SVG path")->required();

  CLI::App* dual = app.add_subcommand("dual", "export the region adjacency graph");
  dual->add_option("-n", n, "number of curves")->required();
  add_alpha_options(dual, alpha, true);
  dual->add_option("--format", format, "dot or edges")->check(CLI::IsMember({"dot", "edges"}));
  dual->add_option("-o", out_path, "output path (default: standard output)");

  CLI::App* info = app.add_subcommand("info", "print order tables and diagram census");
  info->add_option("-n", n, "number of curves")->required();
  add_alpha_options(info, alpha, false);

  CLI::App* canon = app.add_subcommand("canon", "print the normal form of a sequence");
  canon->add_option("--seq", seq_csv, "crossing sequence")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (search->parsed()) {
      return run_search(n, limit, budget_ms, prefix_csv, split_depth, unit, threads, checkpoint,
                        out_path);
    }
    if (validate->parsed()) return run_validate(n, alpha, oracle_only);
    if (render->parsed()) {
      return run_render(n, alpha, layout, shade, canvas, spacing, smooth, out_path);
    }
    if (dual->parsed()) return run_dual(n, alpha, format, out_path);
    if (info->parsed()) return run_info(n, alpha);
    if (canon->parsed()) {
      std::cout << venn::format_sequence(venn::foata_normal_form(venn::parse_sequence(seq_csv)))
                << "\n";
      return kExitValid;
    }
  } catch (const venn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
