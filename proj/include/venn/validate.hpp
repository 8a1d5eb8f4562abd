#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "venn/core.hpp"

namespace venn {

struct Closure {
  int gap = 0;          // the region closed was the set of ranks 1..gap
  RegionSet region = 0; // its interior set
};

struct SweepResult {
  std::vector<Closure> closures;
  std::vector<int> end_ranks;  // index r = label at rank r+1
};

// Processes entries left to right from the given rank vector: entry i closes
// the open region at gap i (ranks 1..i before the swap), then swaps ranks i
// and i+1. Throws ValueOutOfRange on entries outside [1, n-1].
SweepResult sweep(const DiagramOrder& order, const CrossingSequence& seq,
                  const std::vector<int>& start_ranks);

// Incremental sweep with undo, used by the search to extend and retract
// candidate crossings in place.
class SweepCursor {
 public:
  SweepCursor(int n, std::vector<int> start_ranks);

  // Returns the region closed at this gap, then applies the swap.
  RegionSet step(int gap);
  // Inverse of the most recent step(gap).
  void undo(int gap);

  const std::vector<int>& ranks() const { return ranks_; }
  RegionSet open_region(int gap) const { return prefix_[static_cast<std::size_t>(gap)]; }

 private:
  int n_;
  std::vector<int> ranks_;        // index r = label at rank r+1
  std::vector<RegionSet> prefix_; // prefix_[i] = union of labels at ranks 1..i
};

enum class FailReason {
  DuplicateRegion,
  DuplicateOrbit,
  ShiftNotFullCycle,
  StrandClosureFailure,
  LengthMismatch,
  ValueOutOfRange,
  MirrorDuplicate,
};

struct ValidationReport {
  bool valid = false;
  std::optional<FailReason> reason;
  std::optional<std::size_t> failing_position;
  std::size_t census_size = 0;
  std::vector<int> shift_cycle;  // fast path: label image of one rotation

  explicit operator bool() const { return valid; }
};

const char* fail_reason_name(FailReason reason);

// Ground-truth oracle: simulates sigma repeated n times from the identity
// start and demands 2^n-2 pairwise distinct closed regions plus strand
// closure back to the identity rank vector.
//
// The form overloads additionally require alpha to be the canonical
// representative of its diagram: mapping every value v to n-1-v yields the
// twin half that encodes the same diagram up to reflection, and only the
// lexicographically smaller of the two is accepted (mirror-duplicate
// otherwise).
ValidationReport validate_full(const DiagramOrder& order, const CrossingSequence& sigma);
ValidationReport validate_full(const ClusterForm& form);

// Single-cluster fast path: one sigma pass, rotation permutation must be a
// full n-cycle, and the (2^n-2)/n closures must have pairwise distinct
// rotation-orbit canonical forms.
ValidationReport validate_symmetric(const DiagramOrder& order, const CrossingSequence& sigma);
ValidationReport validate_symmetric(const ClusterForm& form);

// Minimum bitmask over all n cyclic rotations of the set.
RegionSet rotation_canonical(RegionSet set, int n);

struct Crosscut {
  int curve = 0;                       // label, 0-based
  std::vector<std::size_t> positions;  // n-1 consecutive global crossing indices
  std::vector<int> partners;           // the n-1 distinct curves cut
};

// Stretches of n-1 consecutive crossings along one curve that traverse the
// gaps in monotone rank order (straight from the outer face to the inner
// face or back), over the full cyclic sequence. Input must validate.
std::vector<Crosscut> find_crosscuts(const DiagramOrder& order, const CrossingSequence& sigma);
std::vector<Crosscut> find_crosscuts(const ClusterForm& form);

struct CrossingList {
  int curve = 0;    // label C_i, 1-based as in the cluster definition
  int cluster = 0;  // cluster index k, 1-based
  std::vector<int> partners;
};

// Start vector [C_{n-1}, C_n, C_{n-3}, C_{n-2}, ..., C_2, C_3, C_1] that puts
// curve labels in clockwise order of touching the outer face. Labels 1-based.
std::vector<int> cluster_start_ranks(int n);

// Ordered partner lists L_{i,k} for every curve within cluster S_k.
std::vector<CrossingList> curve_crossing_lists(const ClusterForm& form, int cluster_index);

// True iff cluster 1 contains a crosscut and every other curve's in-cluster
// partner list is palindromic.
bool check_crosscut_symmetry(const DiagramOrder& order, const CrossingSequence& sigma);
bool check_crosscut_symmetry(const ClusterForm& form);

// Whether the flipped full sequence (reversed, value i mapped to n-i) equals
// the original as a cyclic sequence up to swaps of angularly adjacent
// crossings at non-interacting gaps.
bool check_polar_symmetry(const DiagramOrder& order, const CrossingSequence& sigma);
bool check_polar_symmetry(const ClusterForm& form);

std::vector<int> identity_ranks(int n);

}  // namespace venn
