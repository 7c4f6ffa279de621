#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "ineq/distributions.hpp"
#include "ineq/errors.hpp"
#include "ineq/lorenz.hpp"

namespace ineq {

/// Every index of a distribution in one place.
///
/// Invariants: normalized_kolkata <= pietra <= gini; kolkata is in [1/2, 1)
/// and equals 1/2 exactly when every income is the same; disparity_at_k is
/// kolkata - 1/2.
struct index_report {
  double kolkata = 0.5;             ///< fixed point k of the complementary curve
  double normalized_kolkata = 0.0;  ///< 2k - 1, rescaled to [0, 1)
  double gini = 0.0;
  double pietra = 0.0;
  double mean = 0.0;              ///< in income units (1 for share-only families)
  double pietra_argument = 1.0;   ///< population share F(mean) where p - L(p) peaks
  double median_to_mean = 1.0;    ///< quantile(1/2) / mean
  double disparity_at_k = 0.0;    ///< k - 1/2
};

// --- Kolkata index -----------------------------------------------------------
//
// k solves k + L(k) = 1, i.e. it is the unique fixed point of the
// complementary curve: the richest 1 - k of the population holds the k share
// of income.

namespace detail {

constexpr double kolkata_tie_tol = 1e-12;

/// Exact fixed point of a piecewise-linear curve given by its kinks.
inline double kolkata_from_kinks(std::span<const curve_point> kinks) {
  for (std::size_t i = 1; i < kinks.size(); ++i) {
    const double sum = kinks[i].population + kinks[i].income;
    if (sum < 1.0 - kolkata_tie_tol) continue;
    if (std::abs(sum - 1.0) <= kolkata_tie_tol) return kinks[i].population;
    const curve_point& lo = kinks[i - 1];
    const double slope = (kinks[i].income - lo.income) / (kinks[i].population - lo.population);
    return (1.0 - lo.income + slope * lo.population) / (1.0 + slope);
  }
  return 1.0;  // unreachable: population + income reaches 2 at the last kink
}

template <class L>
double kolkata_by_bisection(L&& lorenz) {
  return bisect_nondecreasing([&](double p) { return p + lorenz(p); }, 0.5, 1.0, 1.0, 1e-12);
}

}  // namespace detail

/// Group-scan computation of k: find the group segment where population and
/// income shares sum past 1, then solve the linear piece exactly.
inline double kolkata_index(const grouped_distribution& dist) {
  if (dist.egalitarian()) return 0.5;  // exact: L(p) = p
  const auto& pop = dist.cumulative_population();
  const auto& inc = dist.cumulative_income();
  for (std::size_t g = 0; g < dist.group_count(); ++g) {
    const double sum = pop[g] + inc[g];
    if (sum < 1.0 - detail::kolkata_tie_tol) continue;
    if (std::abs(sum - 1.0) <= detail::kolkata_tie_tol) return pop[g];
    const double mean = dist.mean();
    const double value = dist.groups()[g].value;
    const double pop_below = g > 0 ? pop[g - 1] : 0.0;
    const double inc_below = g > 0 ? inc[g - 1] : 0.0;
    return (mean * (1.0 - inc_below) + pop_below * value) / (mean + value);
  }
  return 1.0;  // unreachable: the last group always sums to 2
}

inline double kolkata_index(const analytic_distribution& dist) {
  return std::visit(detail::overloaded{
                        [](const uniform_income& f) {
                          const double a = f.lower;
                          const double b = f.upper;
                          return (-(3.0 * a + b) + std::sqrt(5.0 * a * a + 6.0 * a * b + 5.0 * b * b)) /
                                 (2.0 * (b - a));
                        },
                        [](const two_group_lorenz& f) { return f.split; },
                        [&dist](const auto&) {
                          return detail::kolkata_by_bisection([&dist](double p) { return dist.lorenz(p); });
                        },
                    },
                    dist.family());
}

inline double kolkata_index(const lorenz_curve& curve) {
  if (const analytic_distribution* dist = curve.analytic()) return kolkata_index(*dist);
  return detail::kolkata_from_kinks(curve.kinks());
}

// --- Gini index --------------------------------------------------------------

/// Exact group-pair double sum: sum_g sum_t n_g n_t |x_g - x_t| / (2 N M).
inline double gini_index(const grouped_distribution& dist) {
  const auto& groups = dist.groups();
  double sum = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (std::size_t t = g + 1; t < groups.size(); ++t)
      sum += static_cast<double>(groups[g].count) * static_cast<double>(groups[t].count) *
             (groups[t].value - groups[g].value);
  const double n = static_cast<double>(dist.population());
  return sum / (n * dist.total_income());
}

/// Closed form per family; piecewise curves integrate their pieces exactly.
inline double gini_index(const analytic_distribution& dist) {
  return std::visit(
      detail::overloaded{
          [](const uniform_income& f) { return (f.upper - f.lower) / (3.0 * (f.upper + f.lower)); },
          [](const exponential_income&) { return 0.5; },
          [](const pareto_income& f) { return 1.0 / (2.0 * f.shape - 1.0); },
          [](const power_lorenz& f) { return 1.0 - 2.0 / (f.exponent + 1.0); },
          [](const circle_arc_lorenz&) { return std::numbers::pi / 2.0 - 1.0; },
          [](const two_group_lorenz& f) { return 2.0 * f.split - 1.0; },
          [](const piecewise_lorenz& f) {
            double integral = 0.0;
            double lo = 0.0;
            for (const lorenz_segment& seg : f.segments()) {
              const double hi = seg.upper;
              integral += seg.c0 * (hi - lo) + seg.c1 * (hi * hi - lo * lo) / 2.0 +
                          seg.c2 * (hi * hi * hi - lo * lo * lo) / 3.0;
              lo = hi;
            }
            return 1.0 - 2.0 * integral;
          },
      },
      dist.family());
}

// --- Pietra index ------------------------------------------------------------
//
// The largest vertical gap max_p (p - L(p)), attained at the population share
// F(mean); equal to the mean absolute deviation over twice the mean.

namespace detail {

/// Largest group index whose income does not exceed the mean; the gap p - L(p)
/// peaks at that group's cumulative population share. Returns the group count
/// for the single-group (egalitarian) case.
inline std::size_t pietra_group(const grouped_distribution& dist) {
  const auto& groups = dist.groups();
  std::size_t below = 0;
  while (below + 1 < groups.size() && groups[below + 1].value <= dist.mean()) ++below;
  return below;
}

}  // namespace detail

inline double pietra_index(const grouped_distribution& dist) {
  if (dist.egalitarian()) return 0.0;
  const auto& groups = dist.groups();
  const std::size_t tilde = detail::pietra_group(dist);
  double sum = 0.0;
  for (std::size_t g = 0; g <= tilde; ++g)
    sum += static_cast<double>(groups[g].count) * (dist.mean() - groups[g].value);
  return sum / dist.total_income();
}

/// Population share at which the gap p - L(p) is largest (F(mean); reported as
/// 1 for the degenerate equal-incomes case, where the maximizer is not unique).
inline double pietra_argument(const grouped_distribution& dist) {
  if (dist.egalitarian()) return 1.0;
  return dist.cumulative_population()[detail::pietra_group(dist)];
}

namespace detail {

struct pietra_point {
  double argument;  // population share of the peak
  double gap;       // peak value of p - L(p)
};

inline pietra_point pietra_analytic(const analytic_distribution& dist) {
  return std::visit(
      detail::overloaded{
          [](const uniform_income& f) {
            return pietra_point{0.5, (f.upper - f.lower) / (4.0 * (f.upper + f.lower))};
          },
          [](const exponential_income&) {
            return pietra_point{1.0 - std::exp(-1.0), std::exp(-1.0)};
          },
          [](const pareto_income& f) {
            const double a = f.shape;
            const double gap = std::exp((a - 1.0) * std::log(a - 1.0) - a * std::log(a));
            return pietra_point{1.0 - std::pow((a - 1.0) / a, a), gap};
          },
          [](const power_lorenz& f) {
            const double n = f.exponent;
            if (n == 1.0) return pietra_point{1.0, 0.0};
            const double arg = std::pow(n, -1.0 / (n - 1.0));
            return pietra_point{arg, arg - std::pow(arg, n)};
          },
          [](const circle_arc_lorenz&) {
            const double arg = 1.0 / std::numbers::sqrt2;
            return pietra_point{arg, std::numbers::sqrt2 - 1.0};
          },
          [](const two_group_lorenz& f) {
            if (f.split == 0.5) return pietra_point{1.0, 0.0};
            return pietra_point{f.split, 2.0 * f.split - 1.0};
          },
          [](const piecewise_lorenz& f) {
            // p - L(p) is concave on each piece: check the interior vertex
            // (when the piece is curved) and the piece boundaries.
            pietra_point best{1.0, 0.0};
            auto consider = [&](double p, const lorenz_segment& seg) {
              const double gap = p - seg.value(p);
              if (gap > best.gap) best = {p, gap};
            };
            double lo = 0.0;
            for (const lorenz_segment& seg : f.segments()) {
              consider(lo, seg);
              consider(seg.upper, seg);
              if (seg.c2 > 0.0) {
                const double vertex = (1.0 - seg.c1) / (2.0 * seg.c2);
                if (vertex > lo && vertex < seg.upper) consider(vertex, seg);
              }
              lo = seg.upper;
            }
            return best;
          },
      },
      dist.family());
}

}  // namespace detail

inline double pietra_index(const analytic_distribution& dist) {
  return detail::pietra_analytic(dist).gap;
}

inline double pietra_argument(const analytic_distribution& dist) {
  return detail::pietra_analytic(dist).argument;
}

// --- Disparity and aggregation -----------------------------------------------

/// Across-group disparity when society is split at population share p:
/// D(p) = (p - L(p)) / 2. Peaks at the Pietra argument; D(k) = k - 1/2.
inline double disparity(const lorenz_curve& curve, double p) {
  return 0.5 * (p - curve.value(p));
}

namespace detail {

inline index_report finish_report(double k, double gini, double pietra, double mean,
                                  double pietra_arg, double median_to_mean) {
  index_report report;
  report.kolkata = k;
  report.normalized_kolkata = 2.0 * k - 1.0;
  report.gini = gini;
  report.pietra = pietra;
  report.mean = mean;
  report.pietra_argument = pietra_arg;
  report.median_to_mean = median_to_mean;
  report.disparity_at_k = k - 0.5;
  constexpr double slack = 1e-12;
  if (report.normalized_kolkata > report.pietra + slack || report.pietra > report.gini + slack)
    throw ordering_violation("index ordering normalized-k <= pietra <= gini violated");
  return report;
}

}  // namespace detail

inline index_report make_report(const grouped_distribution& dist) {
  return detail::finish_report(kolkata_index(dist), gini_index(dist), pietra_index(dist),
                               dist.mean(), pietra_argument(dist),
                               dist.quantile(0.5) / dist.mean());
}

inline index_report make_report(const analytic_distribution& dist) {
  const detail::pietra_point pp = detail::pietra_analytic(dist);
  return detail::finish_report(kolkata_index(dist), gini_index(dist), pp.gap, dist.mean(),
                               pp.argument, dist.quantile(0.5) / dist.mean());
}

inline index_report make_report(const any_distribution& dist) {
  return std::visit([](const auto& d) { return make_report(d); }, dist);
}

// --- Coincidence of the three indices ------------------------------------------

/// The normalized Kolkata, Pietra and Gini indices agree exactly only for
/// equal incomes or for a two-group split with n1 > n2 and n1^2 x1 = n2^2 x2.
enum class coincidence_condition { egalitarian, two_group, none };

inline coincidence_condition check_coincidence(const grouped_distribution& dist) {
  if (dist.group_count() == 1) return coincidence_condition::egalitarian;
  if (dist.group_count() == 2) {
    const auto& g = dist.groups();
    const double lhs = static_cast<double>(g[0].count) * static_cast<double>(g[0].count) * g[0].value;
    const double rhs = static_cast<double>(g[1].count) * static_cast<double>(g[1].count) * g[1].value;
    if (g[0].count > g[1].count && std::abs(lhs - rhs) <= 1e-9 * std::max(lhs, rhs))
      return coincidence_condition::two_group;
  }
  return coincidence_condition::none;
}

}  // namespace ineq
