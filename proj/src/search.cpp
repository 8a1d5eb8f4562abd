#include "venn/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "venn/validate.hpp"

namespace venn {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

constexpr int kCheckpointVersion = 1;

int default_split_depth(const DiagramOrder& order) {
  return static_cast<int>(std::min<std::uint64_t>(order.alpha_length(), 4));
}

// "i/j" -> keep units at positions i-1, i-1+j, ... (1-based shard index).
std::pair<int, int> parse_unit_selector(const std::string& selector) {
  int i = 0;
  int j = 0;
  char extra = 0;
  if (std::sscanf(selector.c_str(), "%d/%d%c", &i, &j, &extra) != 2 || i < 1 || j < 1 ||
      i > j) {
    throw Error(ErrorKind::ConfigError,
                "unit selector must be \"i/j\" with 1 <= i <= j, got \"" + selector + "\"");
  }
  return {i, j};
}

std::vector<std::uint64_t> alpha_multiset(const DiagramOrder& order) {
  const KPointTable table = k_point_table(order);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(order.n()), 0);
  for (int k = 1; k <= order.n() - 1; ++k) {
    counts[static_cast<std::size_t>(k)] = table.alpha_copies(k);
  }
  return counts;
}

void check_prefix(const DiagramOrder& order, const CrossingSequence& prefix) {
  if (prefix.size() > order.alpha_length()) {
    throw Error(ErrorKind::ConfigError, "prefix longer than the alpha length");
  }
  std::vector<std::uint64_t> counts = alpha_multiset(order);
  for (const int v : prefix) {
    if (v < 2 || v > order.n() - 3) {
      throw Error(ErrorKind::ConfigError,
                  "prefix value " + std::to_string(v) + " outside [2, " +
                      std::to_string(order.n() - 3) + "]");
    }
    if (counts[static_cast<std::size_t>(v)] == 0) {
      throw Error(ErrorKind::ConfigError,
                  "prefix uses value " + std::to_string(v) + " more often than the multiset allows");
    }
    --counts[static_cast<std::size_t>(v)];
  }
}

// Does one sequence start with the other?
bool compatible(const CrossingSequence& a, const CrossingSequence& b) {
  const std::size_t len = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(len), b.begin());
}

struct UnitRecord {
  CrossingSequence unit;
  std::vector<CrossingSequence> alphas;
  SearchStats stats;  // per-unit tree statistics
};

struct RunState {
  std::vector<UnitRecord> completed;
  std::chrono::milliseconds prior_elapsed{0};
};

json unit_record_to_json(const UnitRecord& record) {
  json j;
  j["unit"] = record.unit;
  j["alphas"] = record.alphas;
  j["nodes"] = record.stats.nodes_visited;
  j["prunes"] = {{"multiset", record.stats.prunes_multiset},
                 {"adjacent", record.stats.prunes_adjacent},
                 {"orbit", record.stats.prunes_orbit},
                 {"final", record.stats.prunes_final}};
  j["valid_count"] = record.stats.valid_count;
  return j;
}

UnitRecord unit_record_from_json(const json& j) {
  UnitRecord record;
  record.unit = j.at("unit").get<CrossingSequence>();
  record.alphas = j.at("alphas").get<std::vector<CrossingSequence>>();
  record.stats.nodes_visited = j.at("nodes").get<std::uint64_t>();
  const json& prunes = j.at("prunes");
  record.stats.prunes_multiset = prunes.at("multiset").get<std::uint64_t>();
  record.stats.prunes_adjacent = prunes.at("adjacent").get<std::uint64_t>();
  record.stats.prunes_orbit = prunes.at("orbit").get<std::uint64_t>();
  record.stats.prunes_final = prunes.at("final").get<std::uint64_t>();
  record.stats.valid_count = j.at("valid_count").get<std::uint64_t>();
  return record;
}

// Per-worker depth-first engine over one work unit.
class UnitWorker {
 public:
  UnitWorker(const DiagramOrder& order, const CrossingSequence& forced)
      : order_(order),
        n_(order.n()),
        alpha_len_(order.alpha_length()),
        parts_(canonical_parts(order)),
        forced_(forced),
        remaining_(alpha_multiset(order)),
        census_(std::size_t{1} << n_, 0),
        cursor_(order.n(), start_labels(order.n())) {
    alpha_.reserve(alpha_len_);
    undo_.reserve(order.cluster_length());
  }

  // Runs the subtree; returns false if interrupted by stop/deadline.
  bool run(SearchStats& stats, std::vector<CrossingSequence>& results,
           const std::function<bool()>& interrupted,
           const std::function<bool(const CrossingSequence&)>& emit) {
    stats_ = &stats;
    results_ = &results;
    interrupted_ = &interrupted;
    emit_ = &emit;
    aborted_ = false;

    std::fill(census_.begin(), census_.end(), 0);
    cursor_ = SweepCursor(n_, start_labels(n_));
    undo_.clear();
    alpha_.clear();
    remaining_ = alpha_multiset(order_);

    for (const int g : parts_.rho) push(g);
    descend();
    for (auto it = parts_.rho.rbegin(); it != parts_.rho.rend(); ++it) pop(*it);
    return !aborted_;
  }

 private:
  static std::vector<int> start_labels(int n) {
    std::vector<int> labels = cluster_start_ranks(n);
    for (int& l : labels) --l;
    return labels;
  }

  // Applies one crossing and records its closure orbit; assumes uniqueness.
  void push(int gap) {
    const RegionSet canonical = rotation_canonical(cursor_.open_region(gap), n_);
    census_[canonical] = 1;
    undo_.push_back(canonical);
    cursor_.step(gap);
  }

  void pop(int gap) {
    cursor_.undo(gap);
    census_[undo_.back()] = 0;
    undo_.pop_back();
  }

  // Returns false when the closure orbit is already taken.
  bool try_push(int gap) {
    const RegionSet canonical = rotation_canonical(cursor_.open_region(gap), n_);
    if (census_[canonical]) return false;
    census_[canonical] = 1;
    undo_.push_back(canonical);
    cursor_.step(gap);
    return true;
  }

  int previous_value() const {
    return alpha_.empty() ? parts_.rho.back() : alpha_.back();
  }

  void descend() {
    if (aborted_) return;
    if ((stats_->nodes_visited & 1023) == 0 && (*interrupted_)()) {
      aborted_ = true;
      return;
    }
    if (alpha_.size() == alpha_len_) {
      complete_candidate();
      return;
    }
    const std::size_t depth = alpha_.size();
    const bool is_forced = depth < forced_.size();
    const int lo = is_forced ? forced_[depth] : 2;
    const int hi = is_forced ? forced_[depth] : n_ - 3;
    for (int v = lo; v <= hi; ++v) {
      ++stats_->nodes_visited;
      if (remaining_[static_cast<std::size_t>(v)] == 0) {
        ++stats_->prunes_multiset;
        continue;
      }
      if (previous_value() == v) {
        ++stats_->prunes_adjacent;
        continue;
      }
      if (!try_push(v)) {
        ++stats_->prunes_orbit;
        continue;
      }
      --remaining_[static_cast<std::size_t>(v)];
      alpha_.push_back(v);
      descend();
      alpha_.pop_back();
      ++remaining_[static_cast<std::size_t>(v)];
      pop(v);
      if (aborted_) return;
    }
  }

  // Alpha is complete: replay the forced second half against the census,
  // then confirm with the standalone validator.
  void complete_candidate() {
    const CrossingSequence mirror = mirror_alpha(alpha_);
    CrossingSequence tail = parts_.delta;
    tail.insert(tail.end(), mirror.begin(), mirror.end());

    std::size_t applied = 0;
    bool duplicate = false;
    for (const int g : tail) {
      if (!try_push(g)) {
        duplicate = true;
        break;
      }
      ++applied;
    }
    if (duplicate) {
      ++stats_->prunes_orbit;
    } else {
      const ValidationReport report = validate_symmetric(ClusterForm(order_, alpha_));
      if (report.valid) {
        ++stats_->valid_count;
        results_->push_back(alpha_);
        if (!(*emit_)(alpha_)) aborted_ = true;
      } else {
        ++stats_->prunes_final;
      }
    }
    while (applied > 0) {
      --applied;
      pop(tail[applied]);
    }
  }

  DiagramOrder order_;
  int n_;
  std::size_t alpha_len_;
  CanonicalParts parts_;
  CrossingSequence forced_;
  std::vector<std::uint64_t> remaining_;
  std::vector<std::uint8_t> census_;
  SweepCursor cursor_;
  CrossingSequence alpha_;
  std::vector<RegionSet> undo_;
  bool aborted_ = false;

  SearchStats* stats_ = nullptr;
  std::vector<CrossingSequence>* results_ = nullptr;
  const std::function<bool()>* interrupted_ = nullptr;
  const std::function<bool(const CrossingSequence&)>* emit_ = nullptr;
};

class Checkpointer {
 public:
  Checkpointer(std::string path, const SearchConfig& config, int split_depth)
      : path_(std::move(path)), split_depth_(split_depth), config_(config) {}

  void write(const std::vector<UnitRecord>& completed, std::size_t total_units,
             std::chrono::milliseconds elapsed) {
    if (path_.empty()) return;
    json j;
    j["version"] = kCheckpointVersion;
    j["n"] = config_.n;
    j["split_depth"] = split_depth_;
    j["prefix"] = config_.prefix;
    j["unit_selector"] = config_.unit_selector;
    j["threads"] = config_.threads;
    if (config_.limit) j["limit"] = *config_.limit;
    if (config_.budget) j["budget_ms"] = config_.budget->count();

    SearchStats totals;
    json units = json::array();
    for (const UnitRecord& record : completed) {
      units.push_back(unit_record_to_json(record));
      totals.nodes_visited += record.stats.nodes_visited;
      totals.prunes_multiset += record.stats.prunes_multiset;
      totals.prunes_adjacent += record.stats.prunes_adjacent;
      totals.prunes_orbit += record.stats.prunes_orbit;
      totals.prunes_final += record.stats.prunes_final;
      totals.valid_count += record.stats.valid_count;
    }
    j["completed_units"] = std::move(units);
    j["nodes"] = totals.nodes_visited;
    j["valid_count"] = totals.valid_count;
    j["elapsed_ms"] = elapsed.count();
    j["complete"] = completed.size() == total_units;

    const std::string tmp = path_ + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw Error(ErrorKind::IoError, "cannot write checkpoint " + path_);
      out << j.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, path_);
  }

 private:
  std::string path_;
  int split_depth_;
  SearchConfig config_;
};

SearchOutcome run_search(const SearchConfig& config, const ResultSink& sink,
                         RunState prior) {
  const Clock::time_point started = Clock::now();
  const DiagramOrder order(config.n);
  check_prefix(order, config.prefix);
  if (config.threads < 1) {
    throw Error(ErrorKind::ConfigError, "thread count must be at least 1");
  }
  const int split_depth = config.split_depth ? *config.split_depth : default_split_depth(order);

  std::vector<CrossingSequence> units = split_work(order, split_depth);
  if (!config.unit_selector.empty()) {
    const auto [shard, step] = parse_unit_selector(config.unit_selector);
    std::vector<CrossingSequence> kept;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (static_cast<int>(i % static_cast<std::size_t>(step)) == shard - 1) {
        kept.push_back(units[i]);
      }
    }
    units = std::move(kept);
  }
  if (!config.prefix.empty()) {
    std::vector<CrossingSequence> kept;
    for (CrossingSequence& unit : units) {
      if (compatible(unit, config.prefix)) kept.push_back(std::move(unit));
    }
    units = std::move(kept);
  }

  std::vector<UnitRecord> completed;
  std::vector<char> done(units.size(), 0);
  std::uint64_t found_seed = 0;
  for (UnitRecord& record : prior.completed) {
    const auto it = std::find(units.begin(), units.end(), record.unit);
    if (it == units.end()) {
      throw Error(ErrorKind::ConfigError,
                  "checkpoint lists a work unit outside this configuration");
    }
    done[static_cast<std::size_t>(it - units.begin())] = 1;
    found_seed += record.stats.valid_count;
    completed.push_back(std::move(record));
  }

  Checkpointer checkpointer(config.checkpoint_path, config, split_depth);

  std::mutex mutex;  // guards completed, sink calls, checkpoint writes
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> found{found_seed};
  std::atomic<bool> stop{false};
  const bool has_deadline = config.budget.has_value();
  const Clock::time_point deadline = started + (config.budget ? *config.budget : std::chrono::milliseconds{0});

  if (config.limit && found.load() >= *config.limit) stop = true;

  SearchStats partial;  // work from units interrupted mid-tree
  std::vector<CrossingSequence> partial_alphas;
  std::atomic<bool> all_units_finished{true};

  auto worker = [&]() {
    const std::function<bool()> interrupted = [&]() {
      if (stop.load(std::memory_order_relaxed)) return true;
      if (has_deadline && Clock::now() >= deadline) {
        stop = true;
        return true;
      }
      return false;
    };
    const std::function<bool(const CrossingSequence&)> emit =
        [&](const CrossingSequence& alpha) {
          std::lock_guard<std::mutex> lock(mutex);
          if (sink) sink(alpha);
          const std::uint64_t now_found = found.fetch_add(1) + 1;
          if (config.limit && now_found >= *config.limit) {
            stop = true;
            return false;
          }
          return true;
        };
    while (true) {
      if (interrupted()) {
        all_units_finished = false;
        return;
      }
      const std::size_t index = next.fetch_add(1);
      if (index >= units.size()) return;
      if (done[index]) continue;

      CrossingSequence forced = config.prefix;
      if (units[index].size() > forced.size()) forced = units[index];

      UnitRecord record;
      record.unit = units[index];
      UnitWorker unit_engine(order, forced);
      const bool finished =
          unit_engine.run(record.stats, record.alphas, interrupted, emit);
      std::lock_guard<std::mutex> lock(mutex);
      if (finished) {
        completed.push_back(std::move(record));
        checkpointer.write(completed, units.size(),
                           prior.prior_elapsed +
                               std::chrono::duration_cast<std::chrono::milliseconds>(
                                   Clock::now() - started));
      } else {
        all_units_finished = false;
        partial.nodes_visited += record.stats.nodes_visited;
        partial.prunes_multiset += record.stats.prunes_multiset;
        partial.prunes_adjacent += record.stats.prunes_adjacent;
        partial.prunes_orbit += record.stats.prunes_orbit;
        partial.prunes_final += record.stats.prunes_final;
        partial.valid_count += record.stats.valid_count;
        for (CrossingSequence& alpha : record.alphas) {
          partial_alphas.push_back(std::move(alpha));
        }
      }
    }
  };

  std::vector<std::thread> pool;
  const int thread_count =
      std::min(config.threads, static_cast<int>(std::max<std::size_t>(units.size(), 1)));
  for (int t = 1; t < thread_count; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  SearchOutcome outcome;
  outcome.stats = partial;
  for (const UnitRecord& record : completed) {
    outcome.stats.nodes_visited += record.stats.nodes_visited;
    outcome.stats.prunes_multiset += record.stats.prunes_multiset;
    outcome.stats.prunes_adjacent += record.stats.prunes_adjacent;
    outcome.stats.prunes_orbit += record.stats.prunes_orbit;
    outcome.stats.prunes_final += record.stats.prunes_final;
    outcome.stats.valid_count += record.stats.valid_count;
    for (const CrossingSequence& alpha : record.alphas) outcome.alphas.push_back(alpha);
  }
  for (const CrossingSequence& alpha : partial_alphas) outcome.alphas.push_back(alpha);
  std::sort(outcome.alphas.begin(), outcome.alphas.end());
  outcome.stats.elapsed =
      prior.prior_elapsed +
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started);
  outcome.stats.complete = all_units_finished.load() && completed.size() == units.size();
  if (outcome.stats.complete && !config.checkpoint_path.empty()) {
    checkpointer.write(completed, units.size(), outcome.stats.elapsed);
  }
  return outcome;
}

}  // namespace

std::vector<CrossingSequence> split_work(const DiagramOrder& order, int split_depth) {
  if (split_depth < 0 || static_cast<std::uint64_t>(split_depth) > order.alpha_length()) {
    throw Error(ErrorKind::ConfigError, "split depth must lie in [0, alpha length]");
  }
  std::vector<std::uint64_t> counts = alpha_multiset(order);
  std::vector<CrossingSequence> units;
  CrossingSequence prefix;
  const int lo = 2;
  const int hi = order.n() - 3;
  const std::function<void()> emit = [&]() {
    if (static_cast<int>(prefix.size()) == split_depth) {
      units.push_back(prefix);
      return;
    }
    for (int v = lo; v <= hi; ++v) {
      if (counts[static_cast<std::size_t>(v)] == 0) continue;
      --counts[static_cast<std::size_t>(v)];
      prefix.push_back(v);
      emit();
      prefix.pop_back();
      ++counts[static_cast<std::size_t>(v)];
    }
  };
  emit();
  return units;
}

SearchOutcome search(const SearchConfig& config, const ResultSink& sink) {
  if (!config.checkpoint_path.empty() && std::filesystem::exists(config.checkpoint_path)) {
    return resume(config.checkpoint_path, sink);
  }
  return run_search(config, sink, RunState{});
}

SearchOutcome resume(const std::string& checkpoint_path, const ResultSink& sink) {
  std::ifstream in(checkpoint_path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read checkpoint " + checkpoint_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("malformed checkpoint: ") + e.what());
  }
  try {
    if (!j.contains("version") || j["version"].get<int>() != kCheckpointVersion) {
      throw Error(ErrorKind::ConfigError, "checkpoint version mismatch");
    }
    SearchConfig config;
    config.n = j.at("n").get<int>();
    config.split_depth = j.at("split_depth").get<int>();
    config.prefix = j.at("prefix").get<CrossingSequence>();
    config.unit_selector = j.at("unit_selector").get<std::string>();
    config.threads = j.at("threads").get<int>();
    if (j.contains("limit")) config.limit = j["limit"].get<std::uint64_t>();
    if (j.contains("budget_ms")) {
      config.budget = std::chrono::milliseconds(j["budget_ms"].get<std::int64_t>());
    }
    config.checkpoint_path = checkpoint_path;

    RunState prior;
    prior.prior_elapsed = std::chrono::milliseconds(j.at("elapsed_ms").get<std::int64_t>());
    for (const json& record : j.at("completed_units")) {
      prior.completed.push_back(unit_record_from_json(record));
    }
    return run_search(config, sink, std::move(prior));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("malformed checkpoint: ") + e.what());
  }
}

}  // namespace venn
