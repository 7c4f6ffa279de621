#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ineq/errors.hpp"

namespace ineq {

/// Citation counts of one author's papers, held sorted nonincreasing.
class citation_profile {
 public:
  static citation_profile from_counts(std::span<const std::int64_t> counts) {
    if (counts.empty()) throw invalid_input("empty input: no papers");
    for (std::int64_t c : counts)
      if (c < 0) throw invalid_input("citation counts must be non-negative");
    citation_profile profile;
    profile.counts_.assign(counts.begin(), counts.end());
    std::sort(profile.counts_.begin(), profile.counts_.end(), std::greater<>());
    return profile;
  }

  const std::vector<std::int64_t>& sorted_counts() const noexcept { return counts_; }
  std::size_t paper_count() const noexcept { return counts_.size(); }

 private:
  citation_profile() = default;
  std::vector<std::int64_t> counts_;
};

/// Largest H such that the H-th most cited paper has at least H citations.
inline std::int64_t hirsch_index(const citation_profile& profile) {
  const auto& counts = profile.sorted_counts();
  std::int64_t h = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] >= static_cast<std::int64_t>(i) + 1) h = static_cast<std::int64_t>(i) + 1;
  return h;
}

/// Fixed point of the interpolated citation curve: the piecewise-linear
/// function through (t, count[t]) for t = 1..m, solved exactly on the segment
/// where it meets the diagonal. Requires count[1] >= 1 and count[m] <= m; the
/// floor of the result equals the Hirsch index.
inline double citation_fixed_point(const citation_profile& profile) {
  const auto& counts = profile.sorted_counts();
  const std::int64_t m = static_cast<std::int64_t>(counts.size());
  if (counts.front() < 1)
    throw no_fixed_point("top paper has no citations; curve lies below the diagonal");
  if (counts.back() > m)
    throw no_fixed_point("every paper cited more than m - 1 times; curve lies above the diagonal");
  for (std::int64_t t = 1; t <= m; ++t) {
    const std::int64_t gap = counts[static_cast<std::size_t>(t - 1)] - t;
    if (gap > 0) continue;
    if (gap == 0) return static_cast<double>(t);
    // gap turned negative between t-1 and t; the curve drops by at least one
    // citation per step, so the diagonal is crossed inside this segment.
    const double c_prev = static_cast<double>(counts[static_cast<std::size_t>(t - 2)]);
    const double c_here = static_cast<double>(counts[static_cast<std::size_t>(t - 1)]);
    const double slope = c_here - c_prev;
    return (c_prev - slope * static_cast<double>(t - 1)) / (1.0 - slope);
  }
  return static_cast<double>(m);  // unreachable: counts[m] <= m forces gap <= 0 by t = m
}

}  // namespace ineq
