#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ineq/distributions.hpp"
#include "ineq/errors.hpp"
#include "ineq/indices.hpp"
#include "ineq/lorenz.hpp"

namespace ineq {

enum class dataset_format { raw_values, grouped_counts };
enum class report_format { json, tsv };
enum class curve_format { csv, svg };

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

/// Calls fn(line_number, trimmed) for every non-blank, non-comment line.
/// Accepts LF or CRLF; lines whose first character is '#' are comments.
template <class Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
  std::size_t line_number = 0;
  while (!text.empty()) {
    ++line_number;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    fn(line_number, line);
  }
}

inline double parse_real(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw parse_error(line, "expected a decimal number, got '" + std::string(token) + "'");
  if (!std::isfinite(value)) throw parse_error(line, "value must be finite");
  if (value < 0.0) throw parse_error(line, "negative value");
  return value;
}

inline std::int64_t parse_count(std::string_view token, std::size_t line) {
  std::int64_t count = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, count);
  if (ec != std::errc{} || ptr != end)
    throw parse_error(line, "expected an integer count, got '" + std::string(token) + "'");
  if (count < 1) throw parse_error(line, "count must be a positive integer");
  return count;
}

}  // namespace detail

/// Reads one non-negative real per data line.
inline std::vector<double> parse_values(std::string_view text) {
  std::vector<double> values;
  detail::for_each_data_line(text, [&](std::size_t line, std::string_view token) {
    values.push_back(detail::parse_real(token, line));
  });
  return values;
}

/// Parses a dataset file: either one income per line, or "count,value" lines.
inline grouped_distribution parse_dataset(std::string_view text, dataset_format format) {
  if (format == dataset_format::raw_values) {
    const std::vector<double> values = parse_values(text);
    if (values.empty()) throw invalid_input("empty dataset: no data lines");
    return grouped_distribution::from_raw_samples(values);
  }
  std::vector<income_group> groups;
  detail::for_each_data_line(text, [&](std::size_t line, std::string_view token) {
    const std::size_t comma = token.find(',');
    if (comma == std::string_view::npos)
      throw parse_error(line, "expected 'count,value'");
    const std::string_view count_token = detail::trim(token.substr(0, comma));
    const std::string_view value_token = detail::trim(token.substr(comma + 1));
    groups.push_back({detail::parse_count(count_token, line),
                      detail::parse_real(value_token, line)});
  });
  if (groups.empty()) throw invalid_input("empty dataset: no data lines");
  return grouped_distribution::from_groups(groups);
}

/// Serializes a grouped distribution back to "count,value" lines.
inline std::string write_dataset(const grouped_distribution& dist) {
  std::string out;
  char buf[64];
  for (const income_group& g : dist.groups()) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", static_cast<long long>(g.count), g.value);
    out += buf;
  }
  return out;
}

/// Formats with 12 significant digits and a guaranteed decimal marker, so the
/// output is diff-stable and round-trips well inside 1e-11.
inline std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string s(buf);
  if (s.find_first_of(".eEnif") == std::string::npos) s += ".0";
  return s;
}

/// The report as a JSON object with fixed key order.
inline std::string report_to_json(const index_report& report) {
  std::string out = "{";
  const auto field = [&](const char* key, double value, bool last = false) {
    out += '"';
    out += key;
    out += "\": ";
    out += format_number(value);
    if (!last) out += ", ";
  };
  field("k", report.kolkata);
  field("normalized_k", report.normalized_kolkata);
  field("gini", report.gini);
  field("pietra", report.pietra);
  field("mean", report.mean);
  field("pietra_arg", report.pietra_argument);
  field("median_to_mean", report.median_to_mean);
  field("disparity_at_k", report.disparity_at_k, true);
  out += "}";
  return out;
}

inline std::string write_report(const index_report& report, report_format format) {
  if (format == report_format::json) return report_to_json(report) + "\n";
  std::string out =
      "k\tnormalized_k\tgini\tpietra\tmean\tpietra_arg\tmedian_to_mean\tdisparity_at_k\n";
  const double values[] = {report.kolkata,  report.normalized_kolkata, report.gini,
                           report.pietra,   report.mean,               report.pietra_argument,
                           report.median_to_mean, report.disparity_at_k};
  for (std::size_t i = 0; i < 8; ++i) {
    out += format_number(values[i]);
    out += i + 1 < 8 ? '\t' : '\n';
  }
  return out;
}

namespace detail {

inline std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

/// CSV columns p,L,Lhat, or a self-contained 640x640 SVG plot showing the
/// curve, its complement, the equality diagonal and a marker at (k, 1 - k).
inline std::string export_curve(const lorenz_curve& curve, int points, curve_format format) {
  const std::vector<curve_sample> samples = curve.sample(points);
  if (format == curve_format::csv) {
    std::string out = "p,L,Lhat\n";
    for (const curve_sample& s : samples) {
      out += format_number(s.population);
      out += ',';
      out += format_number(s.lorenz);
      out += ',';
      out += format_number(s.complementary);
      out += '\n';
    }
    return out;
  }

  constexpr double size = 640.0;
  constexpr double margin = 48.0;
  const double span = size - 2.0 * margin;
  const auto x_of = [&](double p) { return margin + p * span; };
  const auto y_of = [&](double share) { return size - margin - share * span; };
  const auto polyline = [&](bool complement) {
    std::string pts;
    for (const curve_sample& s : samples) {
      pts += detail::svg_coord(x_of(s.population));
      pts += ',';
      pts += detail::svg_coord(y_of(complement ? s.complementary : s.lorenz));
      pts += ' ';
    }
    if (!pts.empty()) pts.pop_back();
    return pts;
  };
  const double k = kolkata_index(curve);

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\"/>\n";
  svg += "  <rect x=\"" + detail::svg_coord(margin) + "\" y=\"" + detail::svg_coord(margin) +
         "\" width=\"" + detail::svg_coord(span) + "\" height=\"" + detail::svg_coord(span) +
         "\" fill=\"none\" stroke=\"#444444\"/>\n";
  svg += "  <line x1=\"" + detail::svg_coord(x_of(0.0)) + "\" y1=\"" + detail::svg_coord(y_of(0.0)) +
         "\" x2=\"" + detail::svg_coord(x_of(1.0)) + "\" y2=\"" + detail::svg_coord(y_of(1.0)) +
         "\" stroke=\"#999999\" stroke-dasharray=\"6 4\"/>\n";
  svg += "  <polyline points=\"" + polyline(false) +
         "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
  svg += "  <polyline points=\"" + polyline(true) +
         "\" fill=\"none\" stroke=\"#2980b9\" stroke-width=\"2\"/>\n";
  svg += "  <circle cx=\"" + detail::svg_coord(x_of(k)) + "\" cy=\"" +
         detail::svg_coord(y_of(1.0 - k)) + "\" r=\"5\" fill=\"#222222\"/>\n";
  svg += "  <text x=\"" + detail::svg_coord(size / 2.0) + "\" y=\"" +
         detail::svg_coord(size - margin / 3.0) +
         "\" text-anchor=\"middle\" font-size=\"14\">population share</text>\n";
  svg += "  <text x=\"" + detail::svg_coord(margin / 3.0) + "\" y=\"" +
         detail::svg_coord(size / 2.0) + "\" text-anchor=\"middle\" font-size=\"14\" "
         "transform=\"rotate(-90 " + detail::svg_coord(margin / 3.0) + " " +
         detail::svg_coord(size / 2.0) + ")\">income share</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace ineq
