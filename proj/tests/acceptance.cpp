// Acceptance gate: one line per criterion, PASS or FAIL, with the elapsed
// time and the budget it must stay within.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "diagrams.hpp"
#include "venn/artifacts.hpp"
#include "venn/core.hpp"
#include "venn/search.hpp"
#include "venn/validate.hpp"

using namespace venn;
using testdata::kHamiltonAlpha;
using testdata::kM4Alpha;
using testdata::kM4Sigma;
using testdata::kNewrozAlpha;
using testdata::kSevenCurveCandidates;

namespace {

// Time budgets, milliseconds. No budget = 0.
constexpr long long kBudgetGolden = 100;
constexpr long long kBudgetEnumeration = 1000;
constexpr long long kBudgetNewroz = 5000;
constexpr long long kBudgetTargetedSearch = 600000;
constexpr long long kBudgetProperties = 120000;

int failures = 0;

void report(int index, const char* title, bool ok, long long elapsed_ms, long long budget_ms) {
  const bool in_budget = budget_ms == 0 || elapsed_ms <= budget_ms;
  if (!ok || !in_budget) ++failures;
  if (budget_ms > 0) {
    std::printf("criterion %2d: %s  %s (%lld ms, budget %lld ms)\n", index,
                (ok && in_budget) ? "PASS" : "FAIL", title, elapsed_ms, budget_ms);
  } else {
    std::printf("criterion %2d: %s  %s (%lld ms)\n", index, ok ? "PASS" : "FAIL", title,
                elapsed_ms);
  }
}

template <typename Fn>
void criterion(int index, const char* title, long long budget_ms, Fn&& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "criterion %d threw: %s\n", index, e.what());
  }
  const long long elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
  report(index, title, ok, elapsed, budget_ms);
}

ClusterForm m4() { return {DiagramOrder(7), kM4Alpha}; }
ClusterForm hamilton() { return {DiagramOrder(7), kHamiltonAlpha}; }
ClusterForm newroz() { return {DiagramOrder(11), kNewrozAlpha}; }

std::vector<CrossingSequence> targeted_results;  // filled by criterion 5

bool golden_vectors() {
  if (!validate_full(DiagramOrder(7), kM4Sigma).valid) return false;
  if (!validate_symmetric(DiagramOrder(7), kM4Sigma).valid) return false;
  int accepted = 0;
  for (const CrossingSequence& alpha : kSevenCurveCandidates) {
    const ClusterForm form{DiagramOrder(7), alpha};
    const bool full = validate_full(form).valid;
    const bool fast = validate_symmetric(form).valid;
    if (full != fast) return false;
    if (full) {
      ++accepted;
      if (alpha != kM4Alpha && alpha != kHamiltonAlpha) return false;
    }
  }
  return accepted == 2;
}

bool exhaustive_enumeration() {
  SearchConfig five;
  five.n = 5;
  const SearchOutcome r5 = search(five);
  if (!r5.stats.complete || r5.alphas.size() != 1 || !r5.alphas[0].empty()) return false;

  SearchConfig seven;
  seven.n = 7;
  const SearchOutcome r7 = search(seven);
  if (!r7.stats.complete || r7.alphas.size() != 2) return false;
  if (r7.alphas[0] != kM4Alpha || r7.alphas[1] != kHamiltonAlpha) return false;

  return validate_full(DiagramOrder(3), CrossingSequence{1, 2}).valid;
}

bool newroz_verification() {
  const ValidationReport report = validate_symmetric(newroz());
  if (!report.valid || report.census_size != 186) return false;
  return find_crosscuts(newroz()).size() == 11;
}

bool value_tally() {
  const KPointTable table = k_point_table(DiagramOrder(11));
  std::map<int, std::uint64_t> tally;
  for (const int v : kNewrozAlpha) ++tally[v];
  const std::map<int, std::uint64_t> expect{{2, 3}, {3, 10}, {4, 18}, {5, 22},
                                            {6, 18}, {7, 10}, {8, 3}};
  if (tally != expect) return false;
  for (const auto& [k, count] : expect) {
    if (count != table.r(k) - 1) return false;
  }
  return true;
}

bool targeted_search() {
  SearchConfig config;
  config.n = 11;
  config.threads = 4;
  config.prefix.assign(kNewrozAlpha.begin(), kNewrozAlpha.begin() + 70);
  const SearchOutcome outcome = search(config);
  if (!outcome.stats.complete) return false;
  targeted_results = outcome.alphas;
  return std::binary_search(outcome.alphas.begin(), outcome.alphas.end(), kNewrozAlpha);
}

bool oracle_equivalence() {
  for (const CrossingSequence& alpha : kSevenCurveCandidates) {
    const ClusterForm form{DiagramOrder(7), alpha};
    if (validate_full(form).valid != validate_symmetric(form).valid) return false;
  }
  std::mt19937 rng(20260823);
  for (int n : {5, 7}) {
    const DiagramOrder order(n);
    for (int trial = 0; trial < 5000; ++trial) {
      CrossingSequence sigma(order.cluster_length());
      for (int& v : sigma) v = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
      if (validate_full(order, sigma).valid != validate_symmetric(order, sigma).valid) {
        return false;
      }
    }
  }
  return true;
}

bool lemma_checks() {
  for (const ClusterForm& form : {ClusterForm{DiagramOrder(5), {}}, m4(), newroz()}) {
    const KPointTable table = k_point_table(form.order);
    const CensusReport census = census_report(form);
    for (int k = 1; k <= form.order.n() - 2; ++k) {
      if (census.left_k_points[static_cast<std::size_t>(k) - 1] != table.r(k)) return false;
    }
  }
  const std::set<int> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  const std::set<int> feasible{2, 3, 5, 7};
  for (const int p : primes) {
    if (polar_crosscut_possible(p) != (feasible.count(p) == 1)) return false;
  }
  return true;
}

bool crossing_lists() {
  const std::vector<std::vector<int>> expected{
      {2, 5, 4, 6, 3, 7},
      {3, 1, 3},
      {2, 4, 6, 5, 1, 5, 6, 4, 2},
      {5, 3, 5, 1, 5, 3, 5},
      {4, 6, 3, 6, 4, 1, 4, 6, 3, 6, 4},
      {7, 5, 3, 5, 1, 5, 3, 5, 7},
      {6, 1, 6},
  };
  const std::vector<CrossingList> lists = curve_crossing_lists(m4(), 1);
  if (lists.size() != 7) return false;
  for (std::size_t i = 0; i < 7; ++i) {
    if (lists[i].partners != expected[i]) return false;
  }
  return check_crosscut_symmetry(m4());
}

bool polar_flags() {
  if (!check_polar_symmetry(hamilton())) return false;
  if (check_polar_symmetry(m4())) return false;
  if (targeted_results.empty()) return false;  // needs criterion 5's output
  for (const CrossingSequence& alpha : targeted_results) {
    const CrossingSequence sigma = build_sigma({DiagramOrder(11), alpha});
    if (check_polar_symmetry(DiagramOrder(11), sigma)) return false;
  }
  return true;
}

bool dual_export_invariants() {
  for (const ClusterForm& form :
       {ClusterForm{DiagramOrder(3), {}}, ClusterForm{DiagramOrder(5), {}}, m4(), newroz()}) {
    const int n = form.order.n();
    const DualGraph dual = build_dual(form);
    if (dual.vertices.size() != (std::size_t{1} << n)) return false;
    if (dual.edges.size() != 2 * ((std::size_t{1} << n) - 2)) return false;
    std::map<RegionSet, std::vector<RegionSet>> adjacency;
    for (const auto& [a, b] : dual.edges) {
      if (std::popcount(a ^ b) != 1) return false;
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
    if (seen.size() != dual.vertices.size()) return false;
    if (n == 3) {
      for (const auto& [vertex, neighbors] : adjacency) {
        if (neighbors.size() != 3) return false;
      }
    }
  }
  return true;
}

bool swap_invariance() {
  std::mt19937 rng(4242);
  for (const CrossingSequence& alpha : kSevenCurveCandidates) {
    CrossingSequence sigma = build_sigma({DiagramOrder(7), alpha});
    const bool full = validate_full(DiagramOrder(7), sigma).valid;
    const bool fast = validate_symmetric(DiagramOrder(7), sigma).valid;
    for (int moves = 0; moves < 40; ++moves) {
      const std::size_t i = rng() % (sigma.size() - 1);
      if (std::abs(sigma[i] - sigma[i + 1]) <= 1) continue;
      std::swap(sigma[i], sigma[i + 1]);
      if (validate_full(DiagramOrder(7), sigma).valid != full) return false;
      if (validate_symmetric(DiagramOrder(7), sigma).valid != fast) return false;
    }
  }
  return true;
}

bool mirror_regions() {
  for (const ClusterForm& form : {ClusterForm{DiagramOrder(3), {}},
                                  ClusterForm{DiagramOrder(5), {}}, m4(), hamilton(), newroz()}) {
    const int n = form.order.n();
    const CrossingSequence sigma = build_sigma(form);
    const std::size_t len = sigma.size();
    const std::size_t alpha_len = form.order.alpha_length();
    SweepCursor cursor(n, identity_ranks(n));
    std::vector<RegionSet> closed_at, opened_at;
    for (int pass = 0; pass < 2; ++pass) {
      for (const int gap : sigma) {
        closed_at.push_back(cursor.open_region(gap));
        cursor.step(gap);
        opened_at.push_back(cursor.open_region(gap));
      }
    }
    const RegionSet cut_curve =
        RegionSet{1} << identity_ranks(n)[static_cast<std::size_t>(n) - 1];
    const std::size_t left_end = static_cast<std::size_t>(n - 2) + alpha_len;
    std::multiset<RegionSet> want, got;
    for (std::size_t i = 0; i < left_end; ++i) want.insert(closed_at[i] | cut_curve);
    for (std::size_t i = left_end + static_cast<std::size_t>(n - 2);
         i < len + static_cast<std::size_t>(n) - 2; ++i) {
      if (i == len) continue;
      got.insert(opened_at[i]);
    }
    got.insert(opened_at[len + static_cast<std::size_t>(n) - 2 + alpha_len]);
    if (want != got) return false;
  }
  return true;
}

bool search_determinism() {
  SearchConfig config;
  config.n = 7;
  const SearchOutcome single = search(config);
  config.threads = 4;
  const SearchOutcome multi = search(config);
  return single.alphas == multi.alphas && single.stats.nodes_visited == multi.stats.nodes_visited;
}

bool render_determinism() {
  LayoutOptions options;
  options.shade_by_cardinality = true;
  if (render_svg(m4(), options) != render_svg(m4(), options)) return false;
  options.mode = LayoutMode::Cylindrical;
  options.smoothing = Smoothing::Curve;
  return render_svg(m4(), options) == render_svg(m4(), options);
}

bool property_suites() {
  return swap_invariance() && mirror_regions() && search_determinism() && render_determinism();
}

}  // namespace

int main() {
  criterion(1, "golden seven-curve vectors", kBudgetGolden, golden_vectors);
  criterion(2, "exhaustive small-order enumeration", kBudgetEnumeration, exhaustive_enumeration);
  criterion(3, "eleven-curve verification", kBudgetNewroz, newroz_verification);
  criterion(4, "alpha value tally", 0, value_tally);
  criterion(5, "targeted eleven-curve search", kBudgetTargetedSearch, targeted_search);
  criterion(6, "oracle equivalence", 0, oracle_equivalence);
  criterion(7, "k-point counts and feasibility", 0, lemma_checks);
  criterion(8, "printed crossing lists", 0, crossing_lists);
  criterion(9, "polar symmetry flags", 0, polar_flags);
  criterion(10, "dual export invariants", 0, dual_export_invariants);
  criterion(11, "property suites", kBudgetProperties, property_suites);
  return failures == 0 ? 0 : 1;
}
