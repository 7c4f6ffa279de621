#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "generators.hpp"

using Catch::Approx;
namespace fs = std::filesystem;

namespace {

struct run_result {
  int exit_code = -1;
  std::string output;  // stdout only
};

run_result run_cli(const std::string& args) {
  const std::string command = std::string(INEQ_CLI_PATH) + " " + args + " 2>/dev/null";
  run_result result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class temp_dir {
 public:
  temp_dir() {
    path_ = fs::temp_directory_path() / ("ineq_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~temp_dir() { std::error_code ec; fs::remove_all(path_, ec); }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path file = path_ / name;
    std::ofstream out(file, std::ios::binary);
    out << content;
    return file;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST_CASE("compute on a raw dataset") {
  temp_dir dir;
  const auto file = dir.write("a.txt", "20\n20\n30\n50\n");
  const run_result result = run_cli("compute --input " + file.string() + " --format raw");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("\"k\": 0.583333333333") != std::string::npos);
  CHECK(result.output.find("\"gini\": 0.208333333333") != std::string::npos);

  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["pietra"].get<double>() == Approx(1.0 / 6.0).margin(1e-11));
}

TEST_CASE("compute on an analytic family") {
  const run_result result = run_cli("compute --analytic exponential:lambda=1");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("\"pietra\": 0.367879441171") != std::string::npos);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["k"].get<double>() == Approx(0.6822).margin(5e-5));
  CHECK(parsed["gini"].get<double>() == Approx(0.5).margin(1e-11));
}

TEST_CASE("compute emits TSV on request") {
  temp_dir dir;
  const auto file = dir.write("grouped.txt", "2,20\n1,30\n1,50\n");
  const run_result result =
      run_cli("compute --input " + file.string() + " --format grouped --out tsv");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.rfind("k\tnormalized_k\t", 0) == 0);
  CHECK(result.output.find("0.583333333333") != std::string::npos);
}

TEST_CASE("compute output is deterministic") {
  const run_result first = run_cli("compute --analytic uniform:a=0,b=1");
  const run_result second = run_cli("compute --analytic uniform:a=0,b=1");
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("compare reports the crossing") {
  temp_dir dir;
  const auto a = dir.write("a.txt", "20\n20\n30\n50\n");
  const auto b = dir.write("b.txt", "15\n15\n42\n48\n");
  const run_result result = run_cli("compare --a " + a.string() + " --b " + b.string());
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("\"verdict\": \"Crossing\"") != std::string::npos);
  CHECK(result.output.find("\"crossings\": [0.708333333333]") != std::string::npos);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["a"]["k"].get<double>() == Approx(7.0 / 12.0).margin(1e-11));
  CHECK(parsed["b"]["k"].get<double>() == Approx(29.0 / 48.0).margin(1e-11));
}

TEST_CASE("lorenz exports CSV and SVG files") {
  temp_dir dir;
  const auto file = dir.write("a.txt", "20\n20\n30\n50\n");
  const auto csv_dest = dir.path() / "curve.csv";
  run_result result = run_cli("lorenz --input " + file.string() + " --points 5 --dest " +
                              csv_dest.string());
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.empty());
  std::ifstream csv(csv_dest);
  std::string text((std::istreambuf_iterator<char>(csv)), std::istreambuf_iterator<char>());
  CHECK(text.rfind("p,L,Lhat\n", 0) == 0);
  CHECK(text.find("0.5,0.333333333333") != std::string::npos);

  const auto svg_dest = dir.path() / "curve.svg";
  result = run_cli("lorenz --input " + file.string() + " --points 64 --out svg --dest " +
                   svg_dest.string());
  REQUIRE(result.exit_code == 0);
  std::ifstream svg(svg_dest);
  std::string svg_text((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
  CHECK(svg_text.rfind("<?xml", 0) == 0);
  CHECK(svg_text.find("<circle") != std::string::npos);

  // '-' writes the payload to stdout instead.
  result = run_cli("lorenz --input " + file.string() + " --points 3 --dest -");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.rfind("p,L,Lhat\n", 0) == 0);
}

TEST_CASE("tailfit on a seeded sample file") {
  temp_dir dir;
  std::string content;
  for (double v : testing::pareto_samples(424242, 4000, 1.0, 2.0))
    content += std::to_string(v) + "\n";
  const auto file = dir.write("pareto.txt", content);
  const run_result result = run_cli("tailfit --input " + file.string());
  REQUIRE(result.exit_code == 0);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["alpha"].get<double>() > 0.4);
  CHECK(parsed["alpha"].get<double>() < 0.6);
  CHECK(parsed["k_threshold"].get<double>() >= 0.5);
  CHECK(parsed["points_used"].get<int>() >= 3);

  const run_result windowed =
      run_cli("tailfit --input " + file.string() + " --window-start 0.7");
  REQUIRE(windowed.exit_code == 0);
  CHECK(nlohmann::json::parse(windowed.output)["k_threshold"].get<double>() == 0.7);
}

TEST_CASE("hindex reports both the integer index and the fixed point") {
  temp_dir dir;
  const auto file = dir.write("cites.txt", "10\n8\n5\n4\n3\n");
  const run_result result = run_cli("hindex --input " + file.string());
  REQUIRE(result.exit_code == 0);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["h_index"].get<int>() == 4);
  CHECK(parsed["fixed_point"].get<double>() == Approx(4.0).margin(1e-12));

  const auto uncited = dir.write("zeros.txt", "0\n0\n0\n");
  const run_result zero = run_cli("hindex --input " + uncited.string());
  REQUIRE(zero.exit_code == 0);
  const auto zero_parsed = nlohmann::json::parse(zero.output);
  CHECK(zero_parsed["h_index"].get<int>() == 0);
  CHECK(zero_parsed["fixed_point"].is_null());
}

TEST_CASE("error paths exit nonzero and keep stdout empty") {
  temp_dir dir;
  const run_result missing = run_cli("compute --input /nonexistent/file.txt");
  CHECK(missing.exit_code == 1);
  CHECK(missing.output.empty());

  const auto bad = dir.write("bad.txt", "20\n-3\n");
  const run_result parse_fail = run_cli("compute --input " + bad.string());
  CHECK(parse_fail.exit_code == 1);
  CHECK(parse_fail.output.empty());

  const run_result domain_fail = run_cli("compute --analytic pareto:m=1,alpha=0.9");
  CHECK(domain_fail.exit_code == 1);
  CHECK(domain_fail.output.empty());

  const run_result no_subcommand = run_cli("");
  CHECK(no_subcommand.exit_code == 2);
  CHECK(no_subcommand.output.empty());

  const run_result unknown = run_cli("frobnicate --input x");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.empty());

  const run_result both = run_cli("compute --input a.txt --analytic circle");
  CHECK(both.exit_code == 2);
  CHECK(both.output.empty());

  const run_result bad_grammar = run_cli("compute --analytic pareto:m=1");
  CHECK(bad_grammar.exit_code == 2);
  CHECK(bad_grammar.output.empty());

  const run_result bad_family = run_cli("compute --analytic zipf:s=2");
  CHECK(bad_family.exit_code == 2);

  const run_result bad_points = run_cli("lorenz --input x.txt --points 1 --dest out.csv");
  CHECK(bad_points.exit_code == 2);
}

TEST_CASE("help is available") {
  const run_result help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("compute") != std::string::npos);
  CHECK(help.output.find("tailfit") != std::string::npos);
}
