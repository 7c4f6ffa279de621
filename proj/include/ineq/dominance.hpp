#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ineq/indices.hpp"
#include "ineq/lorenz.hpp"

namespace ineq {

enum class dominance_verdict { a_dominates_b, b_dominates_a, equal, crossing };

/// Outcome of a pairwise curve comparison. A dominates B when curve A lies
/// nowhere below curve B (the dominating curve is the less unequal one).
/// `crossings` lists interior population shares where the curves cross
/// transversally; tangential contacts are not crossings.
struct dominance_result {
  dominance_verdict verdict = dominance_verdict::equal;
  std::vector<double> crossings;
};

namespace detail {

constexpr double dominance_tol = 1e-10;

/// Crossing inside (grid[from], grid[to]) where the sign of diff flips.
/// Piecewise-linear differences are solved exactly on the straddling segment;
/// anything else is refined by bisection.
inline double locate_crossing(const lorenz_curve& a, const lorenz_curve& b,
                              const std::vector<double>& grid, const std::vector<double>& diff,
                              std::size_t from, std::size_t to, bool piecewise_linear) {
  if (piecewise_linear) {
    for (std::size_t t = from; t < to; ++t) {
      const double d0 = diff[t];
      const double d1 = diff[t + 1];
      if (d0 == d1) continue;
      if ((d0 >= 0.0 && d1 <= 0.0) || (d0 <= 0.0 && d1 >= 0.0))
        return grid[t] + (grid[t + 1] - grid[t]) * d0 / (d0 - d1);
    }
    return grid[to];  // unreachable for a genuine sign change
  }
  double lo = grid[from];
  double hi = grid[to];
  const bool lo_positive = diff[from] > 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double d = a.value(mid) - b.value(mid);
    if ((d > 0.0) == lo_positive && d != 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Classifies the pair and localizes every transversal crossing. Two grouped
/// curves are compared on the union of their kink sets, where the difference
/// is piecewise linear and sign changes are exactly solvable; otherwise a
/// 2001-point grid with bisection refinement is used.
inline dominance_result compare_curves(const lorenz_curve& a, const lorenz_curve& b) {
  const bool exact = a.is_grouped() && b.is_grouped();
  std::vector<double> grid;
  if (!exact) {
    grid.reserve(2001 + a.kinks().size() + b.kinks().size());
    for (int i = 0; i <= 2000; ++i) grid.push_back(static_cast<double>(i) / 2000.0);
  }
  for (const curve_point& k : a.kinks()) grid.push_back(k.population);
  for (const curve_point& k : b.kinks()) grid.push_back(k.population);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> diff(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) diff[i] = a.value(grid[i]) - b.value(grid[i]);

  dominance_result result;
  double low = 0.0;
  double high = 0.0;
  int last_sign = 0;
  std::size_t last_at = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    low = std::min(low, diff[i]);
    high = std::max(high, diff[i]);
    const int sign = diff[i] > detail::dominance_tol ? 1
                     : diff[i] < -detail::dominance_tol ? -1
                                                        : 0;
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign)
      result.crossings.push_back(detail::locate_crossing(a, b, grid, diff, last_at, i, exact));
    last_sign = sign;
    last_at = i;
  }

  if (!result.crossings.empty())
    result.verdict = dominance_verdict::crossing;
  else if (high <= detail::dominance_tol && low >= -detail::dominance_tol)
    result.verdict = dominance_verdict::equal;
  else if (low >= -detail::dominance_tol)
    result.verdict = dominance_verdict::a_dominates_b;
  else
    result.verdict = dominance_verdict::b_dominates_a;
  return result;
}

// --- Ranking -------------------------------------------------------------------

enum class index_kind { kolkata, gini, pietra };

struct ranked_distribution {
  std::size_t input_index = 0;
  double value = 0.0;
  std::size_t rank = 1;  // 1-based; tied values share the rank of their block
};

/// Orders distributions ascending by the chosen index. Values closer than
/// 1e-10 are reported with equal rank.
inline std::vector<ranked_distribution> rank_by_index(std::span<const any_distribution> dists,
                                                      index_kind kind) {
  if (dists.empty()) throw invalid_input("empty input: nothing to rank");
  std::vector<ranked_distribution> entries;
  entries.reserve(dists.size());
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const index_report report = make_report(dists[i]);
    const double value = kind == index_kind::kolkata ? report.normalized_kolkata
                         : kind == index_kind::gini  ? report.gini
                                                     : report.pietra;
    entries.push_back({i, value, 1});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ranked_distribution& x, const ranked_distribution& y) {
                     return x.value < y.value;
                   });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].value - entries[i - 1].value <= 1e-10)
      entries[i].rank = entries[i - 1].rank;
    else
      entries[i].rank = i + 1;
  }
  return entries;
}

}  // namespace ineq
