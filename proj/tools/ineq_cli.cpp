// Command-line front end: batch computation of inequality indices, Lorenz
// dominance comparison, curve export, tail fitting and Hirsch indices.
//
// Exit codes: 0 success, 1 input/parse error, 2 usage error.
// stdout carries only the machine-readable payload; diagnostics go to stderr.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ineq/ineq.hpp"

namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double arg_number(std::string_view token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw usage_error("expected a number, got '" + std::string(token) + "'");
  return value;
}

std::vector<std::pair<std::string, std::string>> split_params(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> params;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw usage_error("expected key=value in analytic parameters, got '" + std::string(item) + "'");
    params.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
  }
  return params;
}

// Grammar: family:key=value,...
//   uniform:a=0,b=1        exponential:lambda=1     pareto:m=1,alpha=2
//   powerlaw:n=2           circle                   twogroup:c=0.75
//   piecewise:P=SHARE,...  (interior knots of a piecewise-linear curve)
ineq::analytic_distribution parse_analytic_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
  const auto params = split_params(rest);
  const auto lookup = [&](const std::string& key) -> double {
    for (const auto& [k, v] : params)
      if (k == key) return arg_number(v);
    throw usage_error("analytic family '" + family + "' needs parameter '" + key + "'");
  };

  if (family == "uniform")
    return ineq::uniform_income{lookup("a"), lookup("b")};
  if (family == "exponential")
    return ineq::exponential_income{lookup("lambda")};
  if (family == "pareto")
    return ineq::pareto_income{lookup("m"), lookup("alpha")};
  if (family == "powerlaw")
    return ineq::power_lorenz{lookup("n")};
  if (family == "circle")
    return ineq::circle_arc_lorenz{};
  if (family == "twogroup")
    return ineq::two_group_lorenz{lookup("c")};
  if (family == "piecewise") {
    std::vector<std::pair<double, double>> knots;
    for (const auto& [k, v] : params) knots.emplace_back(arg_number(k), arg_number(v));
    return ineq::piecewise_lorenz::from_knots(knots);
  }
  throw usage_error("unknown analytic family '" + family + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ineq::invalid_input("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

ineq::dataset_format format_of(const std::string& name) {
  return name == "grouped" ? ineq::dataset_format::grouped_counts
                           : ineq::dataset_format::raw_values;
}

ineq::grouped_distribution load_dataset(const std::string& path, const std::string& format) {
  return ineq::parse_dataset(read_file(path), format_of(format));
}

const char* verdict_name(ineq::dominance_verdict verdict) {
  switch (verdict) {
    case ineq::dominance_verdict::a_dominates_b: return "ADominatesB";
    case ineq::dominance_verdict::b_dominates_a: return "BDominatesA";
    case ineq::dominance_verdict::equal: return "Equal";
    case ineq::dominance_verdict::crossing: return "Crossing";
  }
  return "Equal";
}

std::string tail_fit_json(const ineq::tail_fit& fit) {
  std::string out = "{\"alpha\": " + ineq::format_number(fit.alpha);
  out += ", \"k_threshold\": " + ineq::format_number(fit.threshold);
  out += ", \"points_used\": " + std::to_string(fit.points_used);
  out += ", \"r2\": " + ineq::format_number(fit.r_squared);
  out += ", \"stderr\": " + ineq::format_number(fit.standard_error);
  out += ", \"nu\": " + ineq::format_number(fit.nu);
  out += "}\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inequality indices from Lorenz curves"};
  app.require_subcommand(1);
  app.footer(
      "Analytic families for --analytic (family:key=value,...):\n"
      "  uniform:a=A,b=B          incomes uniform on [A, B]\n"
      "  exponential:lambda=L     exponential incomes\n"
      "  pareto:m=M,alpha=A       Pareto incomes, minimum M, exponent A > 1\n"
      "  powerlaw:n=N             Lorenz curve p^N\n"
      "  circle                   quarter-circle Lorenz curve\n"
      "  twogroup:c=C             two-group curve with split C in [1/2, 1)\n"
      "  piecewise:P=S,...        piecewise-linear curve through interior knots\n"
      "\n"
      "Output is plain text; no ANSI styling is emitted (INEQ_NO_COLOR honored).");

  std::string input;
  std::string analytic;
  std::string format = "raw";
  std::string out_format = "json";
  std::string input_b;
  std::string dest;
  std::string curve_out = "csv";
  int points = 101;
  double window_start = -1.0;

  CLI::App* compute = app.add_subcommand("compute", "Index report for one distribution");
  compute->add_option("--input", input, "dataset file");
  compute->add_option("--format", format, "dataset layout: raw|grouped")
      ->check(CLI::IsMember({"raw", "grouped"}));
  compute->add_option("--analytic", analytic, "analytic family instead of a file");
  compute->add_option("--out", out_format, "report format: json|tsv")
      ->check(CLI::IsMember({"json", "tsv"}));

  CLI::App* compare = app.add_subcommand("compare", "Lorenz dominance of two datasets");
  compare->add_option("--a", input, "first dataset file")->required();
  compare->add_option("--b", input_b, "second dataset file")->required();
  compare->add_option("--format", format, "dataset layout: raw|grouped")
      ->check(CLI::IsMember({"raw", "grouped"}));

  CLI::App* lorenz = app.add_subcommand("lorenz", "Export curve samples");
  lorenz->add_option("--input", input, "dataset file")->required();
  lorenz->add_option("--format", format, "dataset layout: raw|grouped")
      ->check(CLI::IsMember({"raw", "grouped"}));
  lorenz->add_option("--points", points, "number of sample points (>= 2)")
      ->check(CLI::Range(2, 10000000));
  lorenz->add_option("--out", curve_out, "export format: csv|svg")
      ->check(CLI::IsMember({"csv", "svg"}));
  lorenz->add_option("--dest", dest, "output path ('-' for stdout)")->required();

  CLI::App* tailfit = app.add_subcommand("tailfit", "Power-law exponent of the upper tail");
  tailfit->add_option("--input", input, "dataset file")->required();
  tailfit->add_option("--format", format, "dataset layout: raw|grouped")
      ->check(CLI::IsMember({"raw", "grouped"}));
  tailfit->add_option("--window-start", window_start,
                      "fit window start in [0.5, 1); defaults to the Kolkata index");

  CLI::App* hindex = app.add_subcommand("hindex", "Hirsch index of a citation-count file");
  hindex->add_option("--input", input, "citation counts, one integer per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << app.help() << std::flush;
    return 2;
  }

  try {
    std::string payload;

    if (compute->parsed()) {
      if (input.empty() == analytic.empty())
        throw usage_error("compute requires exactly one of --input or --analytic");
      const ineq::index_report report =
          analytic.empty() ? ineq::make_report(load_dataset(input, format))
                           : ineq::make_report(parse_analytic_spec(analytic));
      payload = ineq::write_report(
          report, out_format == "tsv" ? ineq::report_format::tsv : ineq::report_format::json);
    } else if (compare->parsed()) {
      const ineq::grouped_distribution a = load_dataset(input, format);
      const ineq::grouped_distribution b = load_dataset(input_b, format);
      const ineq::dominance_result result =
          ineq::compare_curves(ineq::lorenz_curve(a), ineq::lorenz_curve(b));
      payload = "{\"verdict\": \"";
      payload += verdict_name(result.verdict);
      payload += "\", \"crossings\": [";
      for (std::size_t i = 0; i < result.crossings.size(); ++i) {
        if (i > 0) payload += ", ";
        payload += ineq::format_number(result.crossings[i]);
      }
      payload += "], \"a\": " + ineq::report_to_json(ineq::make_report(a));
      payload += ", \"b\": " + ineq::report_to_json(ineq::make_report(b));
      payload += "}\n";
    } else if (lorenz->parsed()) {
      const ineq::grouped_distribution dist = load_dataset(input, format);
      const std::string exported =
          ineq::export_curve(ineq::lorenz_curve(dist), points,
                             curve_out == "svg" ? ineq::curve_format::svg
                                                : ineq::curve_format::csv);
      if (dest == "-") {
        payload = exported;
      } else {
        std::ofstream file(dest, std::ios::binary);
        if (!file) throw ineq::invalid_input("cannot write file: " + dest);
        file << exported;
        if (!file.good()) throw ineq::invalid_input("failed writing file: " + dest);
      }
    } else if (tailfit->parsed()) {
      std::optional<double> start;
      if (window_start >= 0.0) start = window_start;
      ineq::tail_fit fit;
      if (format == "raw") {
        const std::vector<double> samples = ineq::parse_values(read_file(input));
        fit = ineq::fit_tail_empirical(samples, start);
      } else {
        fit = ineq::fit_tail(ineq::lorenz_curve(load_dataset(input, format)), start);
      }
      payload = tail_fit_json(fit);
    } else if (hindex->parsed()) {
      const std::vector<double> values = ineq::parse_values(read_file(input));
      std::vector<std::int64_t> counts;
      counts.reserve(values.size());
      for (double v : values) {
        if (std::floor(v) != v)
          throw ineq::invalid_input("citation counts must be integers");
        counts.push_back(static_cast<std::int64_t>(v));
      }
      const ineq::citation_profile profile = ineq::citation_profile::from_counts(counts);
      payload = "{\"h_index\": " + std::to_string(ineq::hirsch_index(profile));
      payload += ", \"fixed_point\": ";
      try {
        payload += ineq::format_number(ineq::citation_fixed_point(profile));
      } catch (const ineq::no_fixed_point&) {
        payload += "null";
      }
      payload += "}\n";
    }

    std::cout << payload << std::flush;
    return 0;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << app.help() << std::flush;
    return 2;
  } catch (const ineq::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
