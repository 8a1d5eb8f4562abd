#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace venn {

enum class ErrorKind {
  OrderRejected,
  LengthMismatch,
  ValueOutOfRange,
  InvalidInput,
  ConfigError,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// A crossing sequence: entry i in [1, n-1] swaps the curves at ranks i and
// i+1 along the sweep ray (rank 1 = outermost).
using CrossingSequence = std::vector<int>;

// Interior set of a region, as a bitmask over curve indices 0..n-1.
using RegionSet = std::uint32_t;

// Region sets are 32-bit masks, so orders above 31 are not representable.
inline constexpr int kMaxOrder = 31;

// Number of curves. Construction rejects any order for which the canonical
// sequence lengths are non-integral, which weeds out every even or composite
// order in the supported range.
class DiagramOrder {
 public:
  explicit DiagramOrder(int n);

  int n() const { return n_; }
  // (2^n - 2) / n, the number of crossings in one cluster.
  std::uint64_t cluster_length() const { return cluster_length_; }
  // (2^{n-1} - (n-1)^2) / n, the length of the free half of the cluster.
  std::uint64_t alpha_length() const { return alpha_length_; }

 private:
  int n_;
  std::uint64_t cluster_length_;
  std::uint64_t alpha_length_;
};

struct CanonicalParts {
  CrossingSequence rho;    // 1, 3, 2, 5, 4, ..., n-2, n-3
  CrossingSequence delta;  // n-1, n-2, ..., 3, 2
};

// Order plus the free subsequence alpha; rho, delta and the mirror half are
// all determined by these two.
struct ClusterForm {
  DiagramOrder order;
  CrossingSequence alpha;

  ClusterForm(DiagramOrder order_in, CrossingSequence alpha_in);
};

// Counts of k-points/k-regions on the left side of the crosscut, and the
// number of copies of each value a canonical alpha must contain.
struct KPointTable {
  int n = 0;
  std::vector<std::uint64_t> regions_left;  // R_k for k = 1..n-1
  std::vector<std::uint64_t> alpha_count;   // copies of k, k = 1..n-1

  std::uint64_t r(int k) const { return regions_left.at(static_cast<std::size_t>(k) - 1); }
  std::uint64_t alpha_copies(int k) const { return alpha_count.at(static_cast<std::size_t>(k) - 1); }
};

std::pair<std::uint64_t, std::uint64_t> sequence_lengths(const DiagramOrder& order);

CanonicalParts canonical_parts(const DiagramOrder& order);

// Reverse alpha and add one to every element.
CrossingSequence mirror_alpha(const CrossingSequence& alpha);

// sigma = rho . alpha . delta . alpha^{r+}; checks all values land in [1, n-1].
CrossingSequence build_sigma(const ClusterForm& form);

KPointTable k_point_table(const DiagramOrder& order);

// Lexicographically smallest sequence reachable by swapping adjacent entries
// whose values differ by more than one. Idempotent; preserves the multiset
// and the relative order of every dependent pair.
CrossingSequence foata_normal_form(const CrossingSequence& seq);

// True iff the two sequences are reachable from each other by such swaps.
bool trace_equivalent(const CrossingSequence& a, const CrossingSequence& b);

// Whether R_m <= R_{m-1} + 1 for m = (n-1)/2, the arithmetic condition a
// diagram with both crosscut and polar symmetry must satisfy. n = 2 is true
// by convention.
bool polar_crosscut_possible(int n);

std::uint64_t binomial(int n, int k);

// Comma- or whitespace-separated decimals; anything after '#' is ignored.
CrossingSequence parse_sequence(const std::string& text);
std::string format_sequence(const CrossingSequence& seq);

}  // namespace venn
