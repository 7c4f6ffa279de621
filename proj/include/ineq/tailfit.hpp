#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "ineq/distributions.hpp"
#include "ineq/errors.hpp"
#include "ineq/indices.hpp"
#include "ineq/lorenz.hpp"

namespace ineq {

/// Result of fitting the upper-tail power law 1 - w ~ (1 - n)^alpha, where n
/// is the population share and w the income share at n.
struct tail_fit {
  double alpha = 1.0;           ///< fitted exponent (log-log regression slope)
  double threshold = 0.5;       ///< population share where the fit window starts
  int points_used = 0;
  double r_squared = 1.0;
  double standard_error = 0.0;  ///< standard error of alpha
  double nu = 1.0;              ///< implied inverse exponent 1 / alpha
};

namespace detail {

constexpr double tail_window_margin = 1e-3;  // keeps log(1 - n) finite at the top
constexpr int tail_grid_points = 200;

inline tail_fit tail_regression(const lorenz_curve& curve, std::span<const double> abscissae,
                                double threshold) {
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(abscissae.size());
  for (double p : abscissae) {
    const double remaining_pop = 1.0 - p;
    const double remaining_inc = curve.complementary(p);
    if (remaining_pop <= 0.0 || remaining_inc <= 0.0) continue;
    xs.push_back(std::log(remaining_pop));
    ys.push_back(std::log(remaining_inc));
  }
  const std::size_t n = xs.size();
  if (n < 3) throw insufficient_points("fewer than 3 usable points in the fit window");

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  if (sxx <= 0.0) throw degenerate_window("fit window has no abscissa variation");
  const double slope = sxy / sxx;
  const double intercept = mean_y - slope * mean_x;
  double sse = 0.0;
  double sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = ys[i] - (intercept + slope * xs[i]);
    sse += resid * resid;
    sst += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  tail_fit fit;
  fit.alpha = slope;
  fit.threshold = threshold;
  fit.points_used = static_cast<int>(n);
  fit.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
  fit.standard_error = n > 2 ? std::sqrt(sse / static_cast<double>(n - 2) / sxx) : 0.0;
  fit.nu = slope != 0.0 ? 1.0 / slope : 0.0;
  return fit;
}

}  // namespace detail

/// Ordinary least squares on log(1 - w) against log(1 - n) over the window
/// [window_start, 1 - 1e-3]. The window defaults to starting at the curve's
/// Kolkata index. Grouped curves regress on their kink points inside the
/// window (falling back to an even grid when fewer than 3 kinks land there);
/// analytic curves use a 200-point grid.
inline tail_fit fit_tail(const lorenz_curve& curve,
                         std::optional<double> window_start = std::nullopt) {
  double start = 0.0;
  if (window_start.has_value()) {
    start = *window_start;
    if (!(start >= 0.5 && start < 1.0)) throw domain_error("window start outside [1/2, 1)");
  } else {
    start = kolkata_index(curve);
  }
  const double end = 1.0 - detail::tail_window_margin;
  if (start >= end) throw degenerate_window("fit window is empty");

  std::vector<double> abscissae;
  if (curve.is_grouped()) {
    for (const curve_point& k : curve.kinks())
      if (k.population >= start && k.population <= end) abscissae.push_back(k.population);
  }
  if (abscissae.size() < 3) {
    abscissae.clear();
    abscissae.reserve(detail::tail_grid_points);
    for (int i = 0; i < detail::tail_grid_points; ++i)
      abscissae.push_back(start + (end - start) * static_cast<double>(i) /
                                      static_cast<double>(detail::tail_grid_points - 1));
  }
  return detail::tail_regression(curve, abscissae, start);
}

/// Groups the samples, then fits the tail of the resulting curve using its
/// kink points as regression points.
inline tail_fit fit_tail_empirical(std::span<const double> samples,
                                   std::optional<double> window_start = std::nullopt) {
  if (samples.size() < 10) throw insufficient_points("need at least 10 samples for a tail fit");
  const grouped_distribution dist = grouped_distribution::from_raw_samples(samples);
  return fit_tail(lorenz_curve(dist), window_start);
}

}  // namespace ineq
