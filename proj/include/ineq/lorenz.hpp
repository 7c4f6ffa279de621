#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <variant>
#include <vector>

#include "ineq/distributions.hpp"
#include "ineq/errors.hpp"

namespace ineq {

/// A point (population share, income share) on a share curve.
struct curve_point {
  double population = 0.0;
  double income = 0.0;
};

/// One sampled row: p, L(p) and the complementary share 1 - L(p).
struct curve_sample {
  double population = 0.0;
  double lorenz = 0.0;
  double complementary = 1.0;
};

namespace detail {

inline void require_unit_interval(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw domain_error(std::string(what) + " outside [0, 1]");
}

/// Bisection for continuous nondecreasing f with f(lo) <= target <= f(hi).
/// Returns p with |f(p) - target| <= tol.
template <class F>
double bisect_nondecreasing(F&& f, double lo, double hi, double target, double tol,
                            int max_iter = 200) {
  if (std::abs(f(lo) - target) <= tol) return lo;
  if (std::abs(f(hi) - target) <= tol) return hi;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if (std::abs(v - target) <= tol) return mid;
    if (v < target)
      lo = mid;
    else
      hi = mid;
  }
  throw convergence_error("bisection failed to reach tolerance");
}

}  // namespace detail

/// Unified evaluable Lorenz curve over either representation. Grouped sources
/// are stored as their exact kink list and evaluated by binary search plus
/// linear interpolation; analytic sources evaluate their closed forms.
class lorenz_curve {
 public:
  explicit lorenz_curve(const grouped_distribution& dist) {
    std::vector<curve_point> kinks;
    kinks.reserve(dist.group_count() + 1);
    kinks.push_back({0.0, 0.0});
    for (std::size_t g = 0; g < dist.group_count(); ++g)
      kinks.push_back({dist.cumulative_population()[g], dist.cumulative_income()[g]});
    repr_ = std::move(kinks);
  }

  explicit lorenz_curve(analytic_distribution dist) : repr_(std::move(dist)) {}

  bool is_grouped() const noexcept {
    return std::holds_alternative<std::vector<curve_point>>(repr_);
  }

  /// Kink points including (0,0) and (1,1); empty for analytic curves.
  std::span<const curve_point> kinks() const noexcept {
    if (const auto* k = std::get_if<std::vector<curve_point>>(&repr_)) return *k;
    return {};
  }

  const analytic_distribution* analytic() const noexcept {
    return std::get_if<analytic_distribution>(&repr_);
  }

  /// Income share of the poorest fraction p.
  double value(double p) const {
    detail::require_unit_interval(p, "population share");
    if (const auto* dist = std::get_if<analytic_distribution>(&repr_)) return dist->lorenz(p);
    const auto& kinks = std::get<std::vector<curve_point>>(repr_);
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    auto it = std::upper_bound(kinks.begin(), kinks.end(), p,
                               [](double v, const curve_point& k) { return v < k.population; });
    const curve_point& hi = *it;
    const curve_point& lo = *(it - 1);
    const double slope = (hi.income - lo.income) / (hi.population - lo.population);
    return lo.income + (p - lo.population) * slope;
  }

  /// Income share of the richest fraction 1 - p.
  double complementary(double p) const { return 1.0 - value(p); }

  /// Smallest population share p with L(p) = share.
  double inverse(double share) const {
    detail::require_unit_interval(share, "income share");
    if (share == 0.0) return 0.0;
    if (share == 1.0) return 1.0;
    if (const auto* dist = std::get_if<analytic_distribution>(&repr_))
      return inverse_analytic(*dist, share);
    const auto& kinks = std::get<std::vector<curve_point>>(repr_);
    auto it = std::lower_bound(kinks.begin(), kinks.end(), share,
                               [](const curve_point& k, double v) { return k.income < v; });
    const curve_point& hi = *it;
    const curve_point& lo = *(it - 1);  // lo.income < share <= hi.income, slope > 0
    const double slope = (hi.income - lo.income) / (hi.population - lo.population);
    return lo.population + (share - lo.income) / slope;
  }

  /// Grid test of L(1 - L(p)) = 1 - p on 1001 evenly spaced points.
  bool symmetric(double tol = 1e-9) const {
    if (!(tol > 0.0)) throw domain_error("symmetry tolerance must be positive");
    for (int i = 0; i <= 1000; ++i) {
      const double p = static_cast<double>(i) / 1000.0;
      const double q = std::clamp(complementary(p), 0.0, 1.0);
      if (std::abs(value(q) - (1.0 - p)) > tol) return false;
    }
    return true;
  }

  /// Evenly spaced samples; grouped curves additionally include every kink
  /// exactly. First row is (0, 0, 1) and last is (1, 1, 0).
  std::vector<curve_sample> sample(int count) const {
    if (count < 2) throw invalid_input("sample count must be at least 2");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count) + kinks().size());
    for (int i = 0; i < count; ++i)
      grid.push_back(static_cast<double>(i) / static_cast<double>(count - 1));
    for (const curve_point& k : kinks()) grid.push_back(k.population);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<curve_sample> samples;
    samples.reserve(grid.size());
    for (double p : grid) {
      const double v = value(p);
      samples.push_back({p, v, 1.0 - v});
    }
    return samples;
  }

 private:
  static double inverse_analytic(const analytic_distribution& dist, double s) {
    return std::visit(
        detail::overloaded{
            [s](const uniform_income& f) {
              const double r = f.ratio();
              const double b = 1.0 - r;
              return (-b + std::sqrt(b * b + 4.0 * r * s)) / (2.0 * r);
            },
            [&dist, s](const exponential_income&) {
              return detail::bisect_nondecreasing(
                  [&dist](double p) { return dist.lorenz(p); }, 0.0, 1.0, s, 1e-12);
            },
            [s](const pareto_income& f) {
              return 1.0 - std::pow(1.0 - s, f.shape / (f.shape - 1.0));
            },
            [s](const power_lorenz& f) { return std::pow(s, 1.0 / f.exponent); },
            [s](const circle_arc_lorenz&) { return std::sqrt(s * (2.0 - s)); },
            [s](const two_group_lorenz& f) {
              const double c = f.split;
              if (s <= 1.0 - c) return s * c / (1.0 - c);
              return c + (s - (1.0 - c)) * (1.0 - c) / c;
            },
            [s](const piecewise_lorenz& f) {
              const auto& segs = f.segments();
              for (std::size_t i = 0; i < segs.size(); ++i) {
                const lorenz_segment& seg = segs[i];
                if (seg.value(seg.upper) < s) continue;
                const double lo = f.lower_of(i);
                if (seg.c2 == 0.0) {
                  if (seg.c1 == 0.0) return lo;  // flat piece: smallest preimage
                  return std::clamp((s - seg.c0) / seg.c1, lo, seg.upper);
                }
                const double disc = seg.c1 * seg.c1 - 4.0 * seg.c2 * (seg.c0 - s);
                const double root =
                    (-seg.c1 + std::sqrt(std::max(disc, 0.0))) / (2.0 * seg.c2);
                return std::clamp(root, lo, seg.upper);
              }
              return 1.0;
            },
        },
        dist.family());
  }

  std::variant<std::vector<curve_point>, analytic_distribution> repr_;
};

inline lorenz_curve make_curve(const any_distribution& dist) {
  return std::visit([](const auto& d) { return lorenz_curve(d); }, dist);
}

}  // namespace ineq
