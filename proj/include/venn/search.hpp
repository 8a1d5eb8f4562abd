#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "venn/core.hpp"

namespace venn {

struct SearchConfig {
  int n = 11;
  std::optional<std::uint64_t> limit;
  std::optional<std::chrono::milliseconds> budget;
  CrossingSequence prefix;
  std::optional<int> split_depth;          // default min(alpha_length, 4)
  std::string unit_selector;               // "i/j" keeps every j-th unit, or empty
  int threads = 1;
  std::string checkpoint_path;             // empty disables checkpointing
};

struct SearchStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t prunes_multiset = 0;
  std::uint64_t prunes_adjacent = 0;
  std::uint64_t prunes_orbit = 0;
  std::uint64_t prunes_final = 0;
  std::uint64_t valid_count = 0;
  std::chrono::milliseconds elapsed{0};
  bool complete = false;
};

struct SearchOutcome {
  std::vector<CrossingSequence> alphas;  // sorted lexicographically
  SearchStats stats;
};

// Called as results are found, possibly from worker threads (serialized).
using ResultSink = std::function<void(const CrossingSequence&)>;

// All multiset-feasible alpha prefixes of the given length, in
// lexicographic order. Their subtrees partition the search space.
std::vector<CrossingSequence> split_work(const DiagramOrder& order, int split_depth);

// Depth-first enumeration of every alpha whose cluster form validates,
// restricted to the configured prefix and work units. Smallest value first;
// prunes: per-value multiset bound, adjacent equal values, duplicate
// rotation-orbit closures (extended through the forced second half once
// alpha completes), and a final full validation.
SearchOutcome search(const SearchConfig& config, const ResultSink& sink = nullptr);

// Continues an interrupted run from its checkpoint; finished work units are
// skipped and their recorded results are re-emitted into the outcome.
SearchOutcome resume(const std::string& checkpoint_path, const ResultSink& sink = nullptr);

}  // namespace venn
