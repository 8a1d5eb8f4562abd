#include "venn/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace venn {

DiagramOrder::DiagramOrder(int n) : n_(n) {
  if (n < 3 || n > kMaxOrder || n % 2 == 0) {
    throw Error(ErrorKind::OrderRejected,
                "order must be an odd prime in [3, " + std::to_string(kMaxOrder) +
                    "], got " + std::to_string(n));
  }
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  const std::uint64_t border_sq = static_cast<std::uint64_t>(n - 1) * (n - 1);
  if (half < border_sq || (half - border_sq) % un != 0) {
    throw Error(ErrorKind::OrderRejected,
                "order must be an odd prime (alpha length non-integral)");
  }
  const std::uint64_t full = std::uint64_t{1} << n;
  if ((full - 2) % un != 0) {
    throw Error(ErrorKind::OrderRejected,
                "order must be an odd prime (cluster length non-integral)");
  }
  cluster_length_ = (full - 2) / un;
  alpha_length_ = (half - border_sq) / un;
}

ClusterForm::ClusterForm(DiagramOrder order_in, CrossingSequence alpha_in)
    : order(order_in), alpha(std::move(alpha_in)) {
  if (alpha.size() != order.alpha_length()) {
    throw Error(ErrorKind::LengthMismatch,
                "alpha has length " + std::to_string(alpha.size()) + ", expected " +
                    std::to_string(order.alpha_length()) + " for n=" +
                    std::to_string(order.n()));
  }
}

std::pair<std::uint64_t, std::uint64_t> sequence_lengths(const DiagramOrder& order) {
  return {order.cluster_length(), order.alpha_length()};
}

CanonicalParts canonical_parts(const DiagramOrder& order) {
  const int n = order.n();
  CanonicalParts parts;
  parts.rho.push_back(1);
  for (int v = 3; v <= n - 2; v += 2) {
    parts.rho.push_back(v);
    parts.rho.push_back(v - 1);
  }
  for (int v = n - 1; v >= 2; --v) {
    parts.delta.push_back(v);
  }
  return parts;
}

CrossingSequence mirror_alpha(const CrossingSequence& alpha) {
  CrossingSequence out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    out[i] = alpha[alpha.size() - 1 - i] + 1;
  }
  return out;
}

CrossingSequence build_sigma(const ClusterForm& form) {
  const int n = form.order.n();
  const CanonicalParts parts = canonical_parts(form.order);
  CrossingSequence sigma;
  sigma.reserve(form.order.cluster_length());
  sigma.insert(sigma.end(), parts.rho.begin(), parts.rho.end());
  sigma.insert(sigma.end(), form.alpha.begin(), form.alpha.end());
  sigma.insert(sigma.end(), parts.delta.begin(), parts.delta.end());
  const CrossingSequence mirrored = mirror_alpha(form.alpha);
  sigma.insert(sigma.end(), mirrored.begin(), mirrored.end());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] < 1 || sigma[i] > n - 1) {
      throw Error(ErrorKind::ValueOutOfRange,
                  "sigma value " + std::to_string(sigma[i]) + " at position " +
                      std::to_string(i) + " outside [1, " + std::to_string(n - 1) + "]");
    }
  }
  return sigma;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // Row-by-row; every entry for n <= 31 is far below 2^64.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
    }
  }
  return row[static_cast<std::size_t>(k)];
}

namespace {

// R_k = (binom(n-1, k) + (-1)^{k+1}) / n, exact.
std::uint64_t regions_left_of_crosscut(int n, int k) {
  const std::uint64_t b = binomial(n - 1, k);
  const std::uint64_t num = (k % 2 == 1) ? b + 1 : b - 1;
  if (num % static_cast<std::uint64_t>(n) != 0) {
    throw Error(ErrorKind::InvalidInput,
                "R_k not integral for n=" + std::to_string(n) + ", k=" + std::to_string(k));
  }
  return num / static_cast<std::uint64_t>(n);
}

}  // namespace

KPointTable k_point_table(const DiagramOrder& order) {
  const int n = order.n();
  KPointTable table;
  table.n = n;
  for (int k = 1; k <= n - 1; ++k) {
    const std::uint64_t r = regions_left_of_crosscut(n, k);
    table.regions_left.push_back(r);
    table.alpha_count.push_back(k <= n - 2 ? r - 1 : 0);
  }
  return table;
}

CrossingSequence foata_normal_form(const CrossingSequence& seq) {
  int max_value = 0;
  for (int v : seq) {
    if (v < 1) {
      throw Error(ErrorKind::ValueOutOfRange, "crossing values must be positive");
    }
    max_value = std::max(max_value, v);
  }
  const std::size_t len = seq.size();
  std::vector<char> used(len, 0);
  std::vector<char> blocked(static_cast<std::size_t>(max_value) + 2, 0);
  CrossingSequence out;
  out.reserve(len);
  for (std::size_t step = 0; step < len; ++step) {
    std::fill(blocked.begin(), blocked.end(), 0);
    int best = -1;
    std::size_t best_pos = 0;
    for (std::size_t i = 0; i < len; ++i) {
      if (used[i]) continue;
      const int v = seq[i];
      // v is available here iff no earlier pending entry depends on it.
      if (!blocked[static_cast<std::size_t>(v)] && (best == -1 || v < best)) {
        best = v;
        best_pos = i;
      }
      if (v >= 2) blocked[static_cast<std::size_t>(v) - 1] = 1;
      blocked[static_cast<std::size_t>(v)] = 1;
      if (v < max_value) blocked[static_cast<std::size_t>(v) + 1] = 1;
      if (best == 1) break;  // nothing can beat the minimum value
    }
    used[best_pos] = 1;
    out.push_back(best);
  }
  return out;
}

namespace {

CrossingSequence project_pair(const CrossingSequence& seq, int a, int b) {
  CrossingSequence out;
  for (int v : seq) {
    if (v == a || v == b) out.push_back(v);
  }
  return out;
}

}  // namespace

bool trace_equivalent(const CrossingSequence& a, const CrossingSequence& b) {
  if (a.size() != b.size()) return false;
  CrossingSequence sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  const int max_value = sa.empty() ? 0 : sa.back();
  // Dependent pairs are (k, k) and (k, k+1); equal-value order is fixed by
  // the multiset, so only the mixed projections need checking.
  for (int k = 1; k < max_value; ++k) {
    if (project_pair(a, k, k + 1) != project_pair(b, k, k + 1)) return false;
  }
  return true;
}

bool polar_crosscut_possible(int n) {
  if (n == 2) return true;
  const DiagramOrder order(n);  // rejects bad orders
  const int m = (n - 1) / 2;
  const std::uint64_t r_m = regions_left_of_crosscut(n, m);
  const std::uint64_t r_prev = (m >= 2) ? regions_left_of_crosscut(n, m - 1) : 0;
  return r_m <= r_prev + 1;
}

CrossingSequence parse_sequence(const std::string& text) {
  std::string body = text;
  const std::size_t hash = body.find('#');
  if (hash != std::string::npos) body.resize(hash);
  for (char& c : body) {
    if (c == ',') c = ' ';
  }
  CrossingSequence out;
  std::istringstream in(body);
  std::string token;
  while (in >> token) {
    std::size_t parsed = 0;
    int value = 0;
    try {
      value = std::stoi(token, &parsed);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError, "bad sequence token '" + token + "'");
    }
    if (parsed != token.size() || value < 1) {
      throw Error(ErrorKind::ConfigError, "bad sequence token '" + token + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::string format_sequence(const CrossingSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(seq[i]);
  }
  return out;
}

}  // namespace venn
