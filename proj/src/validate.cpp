#include "venn/validate.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <unordered_set>
#include <utility>

namespace venn {

std::vector<int> identity_ranks(int n) {
  std::vector<int> ranks(static_cast<std::size_t>(n));
  std::iota(ranks.begin(), ranks.end(), 0);
  return ranks;
}

std::vector<int> cluster_start_ranks(int n) {
  std::vector<int> ranks;
  ranks.reserve(static_cast<std::size_t>(n));
  for (int v = n - 1; v >= 2; v -= 2) {
    ranks.push_back(v);
    ranks.push_back(v + 1);
  }
  ranks.push_back(1);
  return ranks;
}

SweepCursor::SweepCursor(int n, std::vector<int> start_ranks)
    : n_(n), ranks_(std::move(start_ranks)), prefix_(static_cast<std::size_t>(n) + 1, 0) {
  for (int i = 1; i <= n_; ++i) {
    prefix_[static_cast<std::size_t>(i)] =
        prefix_[static_cast<std::size_t>(i) - 1] |
        (RegionSet{1} << ranks_[static_cast<std::size_t>(i) - 1]);
  }
}

RegionSet SweepCursor::step(int gap) {
  const RegionSet closed = prefix_[static_cast<std::size_t>(gap)];
  std::swap(ranks_[static_cast<std::size_t>(gap) - 1], ranks_[static_cast<std::size_t>(gap)]);
  prefix_[static_cast<std::size_t>(gap)] =
      prefix_[static_cast<std::size_t>(gap) - 1] |
      (RegionSet{1} << ranks_[static_cast<std::size_t>(gap) - 1]);
  return closed;
}

void SweepCursor::undo(int gap) {
  std::swap(ranks_[static_cast<std::size_t>(gap) - 1], ranks_[static_cast<std::size_t>(gap)]);
  prefix_[static_cast<std::size_t>(gap)] =
      prefix_[static_cast<std::size_t>(gap) - 1] |
      (RegionSet{1} << ranks_[static_cast<std::size_t>(gap) - 1]);
}

SweepResult sweep(const DiagramOrder& order, const CrossingSequence& seq,
                  const std::vector<int>& start_ranks) {
  const int n = order.n();
  if (static_cast<int>(start_ranks.size()) != n) {
    throw Error(ErrorKind::ConfigError, "start rank vector must have n entries");
  }
  SweepCursor cursor(n, start_ranks);
  SweepResult result;
  result.closures.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const int gap = seq[i];
    if (gap < 1 || gap > n - 1) {
      throw Error(ErrorKind::ValueOutOfRange,
                  "crossing value " + std::to_string(gap) + " at position " +
                      std::to_string(i) + " outside [1, " + std::to_string(n - 1) + "]");
    }
    result.closures.push_back({gap, cursor.step(gap)});
  }
  result.end_ranks = cursor.ranks();
  return result;
}

RegionSet rotation_canonical(RegionSet set, int n) {
  const RegionSet all = (n == 32) ? ~RegionSet{0} : ((RegionSet{1} << n) - 1);
  if (set == 0 || set == all) {
    throw Error(ErrorKind::InvalidInput, "rotation canonical form needs a proper non-empty set");
  }
  RegionSet best = set;
  RegionSet cur = set;
  for (int i = 1; i < n; ++i) {
    cur = ((cur << 1) | (cur >> (n - 1))) & all;
    best = std::min(best, cur);
  }
  return best;
}

const char* fail_reason_name(FailReason reason) {
  switch (reason) {
    case FailReason::DuplicateRegion: return "duplicate-region";
    case FailReason::DuplicateOrbit: return "duplicate-orbit";
    case FailReason::ShiftNotFullCycle: return "shift-not-full-cycle";
    case FailReason::StrandClosureFailure: return "strand-closure-failure";
    case FailReason::LengthMismatch: return "length-mismatch";
    case FailReason::ValueOutOfRange: return "value-out-of-range";
    case FailReason::MirrorDuplicate: return "mirror-duplicate";
  }
  return "unknown";
}

namespace {

// Census membership set; dense table up to n = 24, hashing beyond that.
class RegionCensus {
 public:
  explicit RegionCensus(int n) {
    if (n <= 24) dense_.assign(std::size_t{1} << n, 0);
  }

  // Returns false if the set was already present.
  bool insert(RegionSet set) {
    if (!dense_.empty()) {
      if (dense_[set]) return false;
      dense_[set] = 1;
      return true;
    }
    return sparse_.insert(set).second;
  }

 private:
  std::vector<std::uint8_t> dense_;
  std::unordered_set<RegionSet> sparse_;
};

ValidationReport basic_checks(const DiagramOrder& order, const CrossingSequence& sigma) {
  ValidationReport report;
  if (sigma.size() != order.cluster_length()) {
    report.reason = FailReason::LengthMismatch;
    return report;
  }
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] < 1 || sigma[i] > order.n() - 1) {
      report.reason = FailReason::ValueOutOfRange;
      report.failing_position = i;
      return report;
    }
  }
  report.valid = true;  // provisional; callers continue from here
  return report;
}

// Accepts only the lexicographically smaller of alpha and its inverted twin
// (value v mapped to n-1-v), which encodes the same diagram up to reflection.
ValidationReport canonical_half_check(const ClusterForm& form) {
  ValidationReport report;
  const int n = form.order.n();
  for (const int v : form.alpha) {
    if (v > (n - 1) - v) {
      report.reason = FailReason::MirrorDuplicate;
      return report;
    }
    if (v < (n - 1) - v) break;
  }
  report.valid = true;
  return report;
}

}  // namespace

ValidationReport validate_full(const DiagramOrder& order, const CrossingSequence& sigma) {
  ValidationReport report = basic_checks(order, sigma);
  if (!report.valid) return report;
  report.valid = false;

  const int n = order.n();
  RegionCensus seen(n);
  SweepCursor cursor(n, identity_ranks(n));
  std::size_t position = 0;
  for (int pass = 0; pass < n; ++pass) {
    for (const int gap : sigma) {
      const RegionSet closed = cursor.step(gap);
      if (!seen.insert(closed)) {
        report.reason = FailReason::DuplicateRegion;
        report.failing_position = position;
        report.census_size = position;
        return report;
      }
      ++position;
    }
  }
  if (cursor.ranks() != identity_ranks(n)) {
    report.reason = FailReason::StrandClosureFailure;
    report.census_size = position;
    return report;
  }
  report.valid = true;
  report.census_size = position;  // 2^n - 2
  return report;
}

ValidationReport validate_full(const ClusterForm& form) {
  ValidationReport canonical = canonical_half_check(form);
  if (!canonical.valid) return canonical;
  return validate_full(form.order, build_sigma(form));
}

ValidationReport validate_symmetric(const DiagramOrder& order, const CrossingSequence& sigma) {
  ValidationReport report = basic_checks(order, sigma);
  if (!report.valid) return report;
  report.valid = false;

  const int n = order.n();
  const SweepResult pass = sweep(order, sigma, identity_ranks(n));

  // The label at rank r after one pass is the image of the label that was
  // there at the start; with the identity start this reads off the rotation's
  // label map directly.
  const std::vector<int>& phi = pass.end_ranks;
  report.shift_cycle = phi;

  std::vector<int> new_label(static_cast<std::size_t>(n), -1);
  int label = 0;
  for (int t = 0; t < n; ++t) {
    if (new_label[static_cast<std::size_t>(label)] != -1) break;
    new_label[static_cast<std::size_t>(label)] = t;
    label = phi[static_cast<std::size_t>(label)];
  }
  if (label != 0 ||
      std::any_of(new_label.begin(), new_label.end(), [](int t) { return t < 0; })) {
    report.reason = FailReason::ShiftNotFullCycle;
    return report;
  }

  RegionCensus seen(n);
  for (std::size_t i = 0; i < pass.closures.size(); ++i) {
    RegionSet relabeled = 0;
    RegionSet mask = pass.closures[i].region;
    while (mask != 0) {
      const int bit = std::countr_zero(mask);
      mask &= mask - 1;
      relabeled |= RegionSet{1} << new_label[static_cast<std::size_t>(bit)];
    }
    const RegionSet canonical = rotation_canonical(relabeled, n);
    if (!seen.insert(canonical)) {
      report.reason = FailReason::DuplicateOrbit;
      report.failing_position = i;
      report.census_size = i;
      return report;
    }
  }
  report.valid = true;
  report.census_size = pass.closures.size();
  return report;
}

ValidationReport validate_symmetric(const ClusterForm& form) {
  ValidationReport canonical = canonical_half_check(form);
  if (!canonical.valid) return canonical;
  return validate_symmetric(form.order, build_sigma(form));
}

namespace {

struct CrossingEvent {
  int a = 0;  // curve at rank gap before the swap
  int b = 0;  // curve at rank gap+1 before the swap
};

// Crossing pairs over `rounds` repetitions of sigma from the given start.
std::vector<CrossingEvent> crossing_events(const DiagramOrder& order,
                                           const CrossingSequence& sigma,
                                           const std::vector<int>& start_ranks,
                                           int rounds) {
  SweepCursor cursor(order.n(), start_ranks);
  std::vector<CrossingEvent> events;
  events.reserve(sigma.size() * static_cast<std::size_t>(rounds));
  for (int round = 0; round < rounds; ++round) {
    for (const int gap : sigma) {
      CrossingEvent event;
      event.a = cursor.ranks()[static_cast<std::size_t>(gap) - 1];
      event.b = cursor.ranks()[static_cast<std::size_t>(gap)];
      cursor.step(gap);
      events.push_back(event);
    }
  }
  return events;
}

void require_valid(const DiagramOrder& order, const CrossingSequence& sigma) {
  const ValidationReport report = validate_full(order, sigma);
  if (!report.valid) {
    throw Error(ErrorKind::InvalidInput,
                std::string("input is not a valid diagram (") +
                    fail_reason_name(*report.reason) + ")");
  }
}

}  // namespace

std::vector<Crosscut> find_crosscuts(const DiagramOrder& order, const CrossingSequence& sigma) {
  require_valid(order, sigma);
  const int n = order.n();
  const std::vector<CrossingEvent> events =
      crossing_events(order, sigma, identity_ranks(n), n);

  struct Hit {
    std::size_t t;
    int partner;
    int gap;
    bool outer;  // the curve sat at rank gap (the outer strand) before the swap
  };
  std::vector<std::vector<Hit>> along_curve(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < events.size(); ++t) {
    const int gap = sigma[t % sigma.size()];
    along_curve[static_cast<std::size_t>(events[t].a)].push_back(
        {t, events[t].b, gap, true});
    along_curve[static_cast<std::size_t>(events[t].b)].push_back(
        {t, events[t].a, gap, false});
  }

  // A crosscut is a stretch of the curve that traverses every gap exactly
  // once in monotone rank order: inward (gaps 1..n-1 from the outer strand)
  // or outward (gaps n-1..1 from the inner strand).
  std::vector<Crosscut> crosscuts;
  for (int curve = 0; curve < n; ++curve) {
    const auto& list = along_curve[static_cast<std::size_t>(curve)];
    const std::size_t count = list.size();
    for (std::size_t s = 0; s < count; ++s) {
      bool inward = true;
      bool outward = true;
      for (int j = 0; j < n - 1 && (inward || outward); ++j) {
        const Hit& hit = list[(s + static_cast<std::size_t>(j)) % count];
        if (hit.gap != j + 1 || !hit.outer) inward = false;
        if (hit.gap != n - 1 - j || hit.outer) outward = false;
      }
      if (inward || outward) {
        Crosscut cut;
        cut.curve = curve;
        for (int j = 0; j < n - 1; ++j) {
          const Hit& hit = list[(s + static_cast<std::size_t>(j)) % count];
          cut.positions.push_back(hit.t);
          cut.partners.push_back(hit.partner);
        }
        crosscuts.push_back(std::move(cut));
      }
    }
  }
  return crosscuts;
}

std::vector<Crosscut> find_crosscuts(const ClusterForm& form) {
  return find_crosscuts(form.order, build_sigma(form));
}

namespace {

// Partner lists per curve over a cluster's crossing window. The window
// covers the cluster's own crossings plus the following border stretch up to
// and including the next crosscut's first descent crossing, so it spans
// cluster_length + n - 1 crossings in total.
std::vector<std::vector<int>> cluster_window_lists(const DiagramOrder& order,
                                                   const CrossingSequence& sigma,
                                                   const std::vector<int>& start_ranks,
                                                   std::size_t begin) {
  const int n = order.n();
  const std::size_t length = sigma.size();
  const std::size_t tail =
      begin + length + static_cast<std::size_t>(n) - 2 + order.alpha_length();
  const int rounds = static_cast<int>(tail / length) + 1;
  const std::vector<CrossingEvent> events =
      crossing_events(order, sigma, start_ranks, rounds);
  std::vector<std::vector<int>> lists(static_cast<std::size_t>(n) + 1);
  auto record = [&](std::size_t t) {
    const CrossingEvent& event = events[t];
    lists[static_cast<std::size_t>(event.a)].push_back(event.b);
    lists[static_cast<std::size_t>(event.b)].push_back(event.a);
  };
  for (std::size_t t = begin; t < begin + length + static_cast<std::size_t>(n) - 2; ++t) {
    record(t);
  }
  record(tail);
  return lists;
}

}  // namespace

std::vector<CrossingList> curve_crossing_lists(const ClusterForm& form, int cluster_index) {
  const DiagramOrder& order = form.order;
  const int n = order.n();
  if (cluster_index < 1 || cluster_index > n) {
    throw Error(ErrorKind::ConfigError, "cluster index must be in [1, n]");
  }
  const CrossingSequence sigma = build_sigma(form);
  require_valid(order, sigma);

  const std::size_t length = sigma.size();
  const std::size_t begin = (static_cast<std::size_t>(cluster_index) - 1) * length;
  const std::vector<std::vector<int>> lists =
      cluster_window_lists(order, sigma, cluster_start_ranks(n), begin);

  std::vector<CrossingList> out;
  for (int curve = 1; curve <= n; ++curve) {
    CrossingList entry;
    entry.curve = curve;
    entry.cluster = cluster_index;
    entry.partners = lists[static_cast<std::size_t>(curve)];
    out.push_back(std::move(entry));
  }
  return out;
}

bool check_crosscut_symmetry(const DiagramOrder& order, const CrossingSequence& sigma) {
  require_valid(order, sigma);
  const int n = order.n();
  const std::vector<std::vector<int>> lists =
      cluster_window_lists(order, sigma, identity_ranks(n), 0);

  int crosscut_curve = -1;
  for (int curve = 0; curve < n; ++curve) {
    const auto& list = lists[static_cast<std::size_t>(curve)];
    if (static_cast<int>(list.size()) != n - 1) continue;
    RegionSet mask = 0;
    for (int partner : list) mask |= RegionSet{1} << partner;
    if (std::popcount(mask) == n - 1) {
      crosscut_curve = curve;
      break;
    }
  }
  if (crosscut_curve < 0) return false;

  for (int curve = 0; curve < n; ++curve) {
    if (curve == crosscut_curve) continue;
    const auto& list = lists[static_cast<std::size_t>(curve)];
    for (std::size_t j = 0; j < list.size() / 2; ++j) {
      if (list[j] != list[list.size() - 1 - j]) return false;
    }
  }
  return true;
}

bool check_crosscut_symmetry(const ClusterForm& form) {
  return check_crosscut_symmetry(form.order, build_sigma(form));
}

namespace {

CrossingSequence pair_projection(const CrossingSequence& seq, int a, int b) {
  CrossingSequence out;
  for (const int v : seq) {
    if (v == a || v == b) out.push_back(v);
  }
  return out;
}

// All cyclic rotations of `from` that equal `to`, reported as the induced
// shifts of the a-occurrences and b-occurrences (modulo their counts).
std::set<std::pair<int, int>> projection_match_shifts(const CrossingSequence& from,
                                                      const CrossingSequence& to, int a) {
  std::set<std::pair<int, int>> shifts;
  const std::size_t m = from.size();
  if (m != to.size()) return shifts;
  if (m == 0) {
    shifts.insert({0, 0});
    return shifts;
  }
  const int count_a = static_cast<int>(std::count(from.begin(), from.end(), a));
  const int count_b = static_cast<int>(m) - count_a;
  CrossingSequence doubled = from;
  doubled.insert(doubled.end(), from.begin(), from.end());
  int shift_a = 0;
  int shift_b = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (std::equal(to.begin(), to.end(), doubled.begin() + static_cast<std::ptrdiff_t>(r))) {
      shifts.insert({count_a ? shift_a % count_a : 0, count_b ? shift_b % count_b : 0});
    }
    if (doubled[r] == a) ++shift_a; else ++shift_b;
  }
  return shifts;
}

// Equality of cyclic sequences up to rotation and swaps of angularly adjacent
// crossings at non-interacting gaps. Matching both sequences pair by pair is
// not enough: the rotation each pair projection needs must displace every
// gap's crossings by one consistent amount, so feasible per-gap shifts are
// threaded through the chain of adjacent gap pairs.
bool cyclic_trace_equal(const CrossingSequence& lhs, const CrossingSequence& rhs, int n) {
  std::vector<int> tally_l(static_cast<std::size_t>(n), 0);
  std::vector<int> tally_r(static_cast<std::size_t>(n), 0);
  for (const int v : lhs) ++tally_l[static_cast<std::size_t>(v) - 1];
  for (const int v : rhs) ++tally_r[static_cast<std::size_t>(v) - 1];
  if (lhs.size() != rhs.size() || tally_l != tally_r) return false;

  std::set<int> feasible;
  for (int t = 0; t < std::max(tally_l[0], 1); ++t) feasible.insert(t);
  for (int k = 1; k <= n - 2; ++k) {
    const auto shifts = projection_match_shifts(pair_projection(rhs, k, k + 1),
                                                pair_projection(lhs, k, k + 1), k);
    std::set<int> next;
    for (const auto& [shift_k, shift_next] : shifts) {
      if (tally_l[static_cast<std::size_t>(k) - 1] == 0 || feasible.count(shift_k)) {
        next.insert(shift_next);
      }
    }
    if (next.empty()) return false;
    feasible = std::move(next);
  }
  return true;
}

}  // namespace

bool check_polar_symmetry(const DiagramOrder& order, const CrossingSequence& sigma) {
  require_valid(order, sigma);
  const int n = order.n();

  CrossingSequence full;
  full.reserve(sigma.size() * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) full.insert(full.end(), sigma.begin(), sigma.end());

  // Flip about the equator: reverse the sweep and invert every rank gap.
  CrossingSequence flipped(full.rbegin(), full.rend());
  for (int& v : flipped) v = n - v;

  return cyclic_trace_equal(full, flipped, n);
}

bool check_polar_symmetry(const ClusterForm& form) {
  return check_polar_symmetry(form.order, build_sigma(form));
}

}  // namespace venn
