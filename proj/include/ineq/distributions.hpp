#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ineq/errors.hpp"

namespace ineq {

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw invalid_input(std::string(what) + " must be finite");
}

}  // namespace detail

/// One block of identical incomes: `count` persons each holding `value`.
struct income_group {
  std::int64_t count = 0;
  double value = 0.0;
};

/// Discrete income distribution in canonical form: groups sorted by strictly
/// increasing income (equal values merged on construction), together with the
/// cumulative population and income shares derived from them.
///
/// Immutable after construction; safe to share across threads.
class grouped_distribution {
 public:
  /// Groups raw per-person incomes into the canonical form.
  static grouped_distribution from_raw_samples(std::span<const double> values) {
    if (values.empty()) throw invalid_input("empty input: no income samples");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i]))
        throw invalid_input("non-finite value at index " + std::to_string(i));
      if (values[i] < 0.0)
        throw invalid_input("negative value at index " + std::to_string(i));
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<income_group> groups;
    for (double v : sorted) {
      if (!groups.empty() && groups.back().value == v)
        ++groups.back().count;
      else
        groups.push_back({1, v});
    }
    return from_groups(groups);
  }

  /// Builds the distribution from (count, value) blocks. Blocks may arrive in
  /// any order; blocks with equal value are merged.
  static grouped_distribution from_groups(std::span<const income_group> raw) {
    if (raw.empty()) throw invalid_input("empty input: no income groups");
    for (const income_group& g : raw) {
      if (g.count < 1) throw invalid_input("group count must be a positive integer");
      detail::require_finite(g.value, "group value");
      if (g.value < 0.0) throw invalid_input("negative group value");
    }
    std::vector<income_group> groups(raw.begin(), raw.end());
    std::sort(groups.begin(), groups.end(),
              [](const income_group& a, const income_group& b) { return a.value < b.value; });
    std::vector<income_group> merged;
    for (const income_group& g : groups) {
      if (!merged.empty() && merged.back().value == g.value)
        merged.back().count += g.count;
      else
        merged.push_back(g);
    }

    grouped_distribution dist;
    dist.groups_ = std::move(merged);
    std::int64_t population = 0;
    double total = 0.0;
    for (const income_group& g : dist.groups_) {
      population += g.count;
      total += static_cast<double>(g.count) * g.value;
    }
    if (total <= 0.0) throw invalid_input("all incomes are zero");
    dist.population_ = population;
    dist.total_income_ = total;
    dist.mean_ = total / static_cast<double>(population);

    // Dividing the running partial sums by their own final value makes both
    // cumulative arrays end at exactly 1.
    dist.cum_pop_.reserve(dist.groups_.size());
    dist.cum_inc_.reserve(dist.groups_.size());
    std::int64_t pop_so_far = 0;
    double inc_so_far = 0.0;
    for (const income_group& g : dist.groups_) {
      pop_so_far += g.count;
      inc_so_far += static_cast<double>(g.count) * g.value;
      dist.cum_pop_.push_back(static_cast<double>(pop_so_far) / static_cast<double>(population));
      dist.cum_inc_.push_back(inc_so_far / total);
    }
    dist.cum_inc_.back() = 1.0;
    return dist;
  }

  const std::vector<income_group>& groups() const noexcept { return groups_; }
  std::size_t group_count() const noexcept { return groups_.size(); }
  std::int64_t population() const noexcept { return population_; }
  double total_income() const noexcept { return total_income_; }
  double mean() const noexcept { return mean_; }

  /// Cumulative population shares per group; nondecreasing, ends at exactly 1.
  const std::vector<double>& cumulative_population() const noexcept { return cum_pop_; }
  /// Cumulative income shares per group; nondecreasing, ends at exactly 1.
  const std::vector<double>& cumulative_income() const noexcept { return cum_inc_; }

  bool egalitarian() const noexcept { return groups_.size() == 1; }

  /// Left inverse of the distribution function: the smallest income x with
  /// F(x) >= q.
  double quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0)) throw domain_error("quantile argument outside [0, 1]");
    for (std::size_t g = 0; g < groups_.size(); ++g)
      if (cum_pop_[g] >= q) return groups_[g].value;
    return groups_.back().value;
  }

 private:
  grouped_distribution() = default;

  std::vector<income_group> groups_;
  std::int64_t population_ = 0;
  double total_income_ = 0.0;
  double mean_ = 0.0;
  std::vector<double> cum_pop_;
  std::vector<double> cum_inc_;
};

// --- Analytic families -----------------------------------------------------
//
// The first three families are genuine income distributions (they carry an
// income scale); the remaining ones are defined purely by their Lorenz
// function, so incomes are normalized to mean 1 and the quantile function is
// the curve's slope.

/// Incomes uniform on [lower, upper], 0 <= lower < upper.
struct uniform_income {
  double lower = 0.0;
  double upper = 1.0;

  double ratio() const noexcept { return (upper - lower) / (upper + lower); }
  double lorenz(double p) const noexcept { return p * (1.0 - ratio() * (1.0 - p)); }
  double mean() const noexcept { return 0.5 * (lower + upper); }
  double quantile(double q) const noexcept { return lower + (upper - lower) * q; }
};

/// Exponential incomes with the given rate.
struct exponential_income {
  double rate = 1.0;

  double lorenz(double p) const noexcept {
    return p + (1.0 - p) * std::log1p(-p);  // (1-p)ln(1-p) -> 0 as p -> 1
  }
  double mean() const noexcept { return 1.0 / rate; }
  double quantile(double q) const noexcept { return -std::log1p(-q) / rate; }
};

/// Pareto incomes on [minimum, inf) with tail exponent `shape` > 1.
struct pareto_income {
  double minimum = 1.0;
  double shape = 2.0;

  double lorenz(double p) const noexcept { return 1.0 - std::pow(1.0 - p, 1.0 - 1.0 / shape); }
  double mean() const noexcept { return shape * minimum / (shape - 1.0); }
  double quantile(double q) const noexcept { return minimum * std::pow(1.0 - q, -1.0 / shape); }
};

/// Share curve p^n for n >= 1 (n = 1 is perfect equality).
struct power_lorenz {
  double exponent = 2.0;

  double lorenz(double p) const noexcept { return std::pow(p, exponent); }
  double mean() const noexcept { return 1.0; }
  double quantile(double q) const noexcept {
    return exponent * std::pow(q, exponent - 1.0);
  }
};

/// Share curve 1 - sqrt(1 - p^2): the quarter circle through (0,0) and (1,1).
struct circle_arc_lorenz {
  double lorenz(double p) const noexcept { return 1.0 - std::sqrt((1.0 - p) * (1.0 + p)); }
  double mean() const noexcept { return 1.0; }
  double quantile(double q) const noexcept { return q / std::sqrt((1.0 - q) * (1.0 + q)); }
};

/// Two income blocks with population split `split` in [1/2, 1): the poorer
/// `split` fraction holds the 1 - split income share. The only non-trivial
/// shape whose major inequality indices all coincide.
struct two_group_lorenz {
  double split = 0.5;

  double lorenz(double p) const noexcept {
    const double c = split;
    if (p <= c) return (1.0 - c) / c * p;
    return (1.0 - c) + c / (1.0 - c) * (p - c);
  }
  double mean() const noexcept { return 1.0; }
  double quantile(double q) const noexcept {
    return q <= split ? (1.0 - split) / split : split / (1.0 - split);
  }
};

/// One piece of a piecewise share curve: value(p) = c0 + c1*p + c2*p^2 on
/// (lower, upper], where lower is the previous piece's upper (0 for the first).
struct lorenz_segment {
  double upper = 1.0;
  double c0 = 0.0;
  double c1 = 1.0;
  double c2 = 0.0;

  double value(double p) const noexcept { return c0 + p * (c1 + p * c2); }
  double slope(double p) const noexcept { return c1 + 2.0 * c2 * p; }
};

/// Share curve stitched from linear/quadratic pieces. Pieces must join
/// continuously, start at (0,0), end at (1,1) and be convex nondecreasing.
class piecewise_lorenz {
 public:
  explicit piecewise_lorenz(std::vector<lorenz_segment> segments)
      : segments_(std::move(segments)) {
    validate();
  }

  /// Piecewise-linear curve through (0,0), the given interior (p, share)
  /// knots, and (1,1).
  static piecewise_lorenz from_knots(std::span<const std::pair<double, double>> knots) {
    std::vector<lorenz_segment> segments;
    double prev_p = 0.0;
    double prev_s = 0.0;
    auto add_piece = [&](double p, double s) {
      if (!(p > prev_p)) throw domain_error("piecewise knots must have strictly increasing p");
      const double slope = (s - prev_s) / (p - prev_p);
      segments.push_back({p, prev_s - slope * prev_p, slope, 0.0});
      prev_p = p;
      prev_s = s;
    };
    for (const auto& [p, s] : knots) {
      detail::require_finite(p, "knot position");
      detail::require_finite(s, "knot share");
      if (!(p > 0.0 && p < 1.0)) throw domain_error("interior knot p must lie in (0, 1)");
      add_piece(p, s);
    }
    add_piece(1.0, 1.0);
    return piecewise_lorenz(std::move(segments));
  }

  const std::vector<lorenz_segment>& segments() const noexcept { return segments_; }

  double lower_of(std::size_t i) const noexcept { return i == 0 ? 0.0 : segments_[i - 1].upper; }

  double lorenz(double p) const noexcept {
    const lorenz_segment& seg = segment_at(p);
    return seg.value(p);
  }
  double mean() const noexcept { return 1.0; }
  double quantile(double q) const noexcept { return segment_at(q).slope(q); }

  const lorenz_segment& segment_at(double p) const noexcept {
    // Pieces own the half-open span (lower, upper]; p = 0 falls to the first.
    auto it = std::lower_bound(segments_.begin(), segments_.end(), p,
                               [](const lorenz_segment& s, double v) { return s.upper < v; });
    if (it == segments_.end()) --it;
    return *it;
  }

 private:
  void validate() const {
    constexpr double tol = 1e-12;
    if (segments_.empty()) throw domain_error("piecewise curve needs at least one segment");
    double prev_upper = 0.0;
    double prev_value = 0.0;
    double prev_slope = -tol;
    for (const lorenz_segment& seg : segments_) {
      detail::require_finite(seg.upper, "segment upper");
      detail::require_finite(seg.c0, "segment coefficient");
      detail::require_finite(seg.c1, "segment coefficient");
      detail::require_finite(seg.c2, "segment coefficient");
      if (!(seg.upper > prev_upper)) throw domain_error("segment uppers must increase");
      if (seg.c2 < -tol) throw domain_error("segment must be convex (c2 >= 0)");
      if (std::abs(seg.value(prev_upper) - prev_value) > tol)
        throw domain_error("segments must join continuously");
      if (seg.slope(prev_upper) < prev_slope - tol)
        throw domain_error("slope must be nondecreasing across segments");
      prev_slope = seg.slope(seg.upper);
      prev_value = seg.value(seg.upper);
      prev_upper = seg.upper;
    }
    if (std::abs(prev_upper - 1.0) > tol) throw domain_error("last segment must end at p = 1");
    if (std::abs(prev_value - 1.0) > tol) throw domain_error("curve must reach share 1 at p = 1");
  }

  std::vector<lorenz_segment> segments_;
};

using analytic_family = std::variant<uniform_income, exponential_income, pareto_income,
                                     power_lorenz, circle_arc_lorenz, two_group_lorenz,
                                     piecewise_lorenz>;

/// A validated analytic income distribution with closed-form share curve,
/// mean and quantile function. Families defined only by their curve report a
/// normalized mean of 1.
class analytic_distribution {
 public:
  analytic_distribution(analytic_family family) : family_(std::move(family)) { validate(); }
  analytic_distribution(uniform_income f) : analytic_distribution(analytic_family(f)) {}
  analytic_distribution(exponential_income f) : analytic_distribution(analytic_family(f)) {}
  analytic_distribution(pareto_income f) : analytic_distribution(analytic_family(f)) {}
  analytic_distribution(power_lorenz f) : analytic_distribution(analytic_family(f)) {}
  analytic_distribution(circle_arc_lorenz f) : analytic_distribution(analytic_family(f)) {}
  analytic_distribution(two_group_lorenz f) : analytic_distribution(analytic_family(f)) {}
  analytic_distribution(piecewise_lorenz f) : analytic_distribution(analytic_family(std::move(f))) {}

  const analytic_family& family() const noexcept { return family_; }

  /// Income share of the poorest fraction p of the population.
  double lorenz(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw domain_error("population share outside [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    return std::visit([p](const auto& f) { return f.lorenz(p); }, family_);
  }

  double mean() const noexcept {
    return std::visit([](const auto& f) { return f.mean(); }, family_);
  }

  /// Left inverse of the distribution function (curve slope for share-only
  /// families, times the unit mean).
  double quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0)) throw domain_error("quantile argument outside [0, 1]");
    return std::visit([q](const auto& f) { return f.quantile(q); }, family_);
  }

 private:
  void validate() const {
    std::visit(detail::overloaded{
                   [](const uniform_income& f) {
                     detail::require_finite(f.lower, "uniform lower bound");
                     detail::require_finite(f.upper, "uniform upper bound");
                     if (!(f.lower >= 0.0 && f.upper > f.lower))
                       throw domain_error("uniform: require 0 <= lower < upper");
                   },
                   [](const exponential_income& f) {
                     detail::require_finite(f.rate, "exponential rate");
                     if (!(f.rate > 0.0)) throw domain_error("exponential: require rate > 0");
                   },
                   [](const pareto_income& f) {
                     detail::require_finite(f.minimum, "pareto minimum");
                     detail::require_finite(f.shape, "pareto shape");
                     if (!(f.minimum > 0.0)) throw domain_error("pareto: require minimum > 0");
                     if (!(f.shape > 1.0)) throw domain_error("pareto: require shape > 1");
                   },
                   [](const power_lorenz& f) {
                     detail::require_finite(f.exponent, "power exponent");
                     if (!(f.exponent >= 1.0)) throw domain_error("power: require exponent >= 1");
                   },
                   [](const circle_arc_lorenz&) {},
                   [](const two_group_lorenz& f) {
                     detail::require_finite(f.split, "two-group split");
                     if (!(f.split >= 0.5 && f.split < 1.0))
                       throw domain_error("two-group: require split in [1/2, 1)");
                   },
                   [](const piecewise_lorenz&) {},  // validated by its own constructor
               },
               family_);
  }

  analytic_family family_;
};

/// Either representation of an income distribution.
using any_distribution = std::variant<grouped_distribution, analytic_distribution>;

}  // namespace ineq
