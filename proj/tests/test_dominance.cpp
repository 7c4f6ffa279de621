#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "generators.hpp"
#include "ineq/ineq.hpp"

using Catch::Approx;
using namespace ineq;

namespace {

grouped_distribution four_person_a() {
  return grouped_distribution::from_groups(std::vector<income_group>{{2, 20}, {1, 30}, {1, 50}});
}

grouped_distribution four_person_b() {
  return grouped_distribution::from_groups(std::vector<income_group>{{2, 15}, {1, 42}, {1, 48}});
}

// Any piecewise-linear Lorenz curve whose kink widths are n_g / N is realized
// by a grouped distribution with incomes equal to the segment slopes.
grouped_distribution towards_equality(const grouped_distribution& dist, double theta) {
  std::vector<income_group> groups;
  double prev_pop = 0.0;
  double prev_inc = 0.0;
  for (std::size_t g = 0; g < dist.group_count(); ++g) {
    const double pop = dist.cumulative_population()[g];
    const double inc = dist.cumulative_income()[g];
    const double slope = (inc - prev_inc) / (pop - prev_pop);
    groups.push_back({dist.groups()[g].count, theta * slope + (1.0 - theta)});
    prev_pop = pop;
    prev_inc = inc;
  }
  return grouped_distribution::from_groups(groups);
}

}  // namespace

TEST_CASE("the two worked examples cross at 17/24") {
  const lorenz_curve a(four_person_a());
  const lorenz_curve b(four_person_b());
  const dominance_result result = compare_curves(a, b);
  REQUIRE(result.verdict == dominance_verdict::crossing);
  REQUIRE(result.crossings.size() == 1);
  CHECK(result.crossings[0] == Approx(17.0 / 24.0).margin(1e-10));
  CHECK(std::abs(a.value(result.crossings[0]) - b.value(result.crossings[0])) <= 1e-10);
}

TEST_CASE("a curve equals itself") {
  const lorenz_curve a(four_person_a());
  const dominance_result result = compare_curves(a, a);
  CHECK(result.verdict == dominance_verdict::equal);
  CHECK(result.crossings.empty());
}

TEST_CASE("the diagonal dominates everything") {
  const auto flat = grouped_distribution::from_groups(std::vector<income_group>{{1, 10}});
  const dominance_result result =
      compare_curves(lorenz_curve(flat), lorenz_curve(four_person_a()));
  CHECK(result.verdict == dominance_verdict::a_dominates_b);
  CHECK(result.crossings.empty());
}

TEST_CASE("swapping arguments flips the verdict and keeps crossings") {
  std::mt19937_64 rng(7301);
  for (int trial = 0; trial < 200; ++trial) {
    const lorenz_curve a(testing::random_grouped(rng));
    const lorenz_curve b(testing::random_grouped(rng));
    const dominance_result fwd = compare_curves(a, b);
    const dominance_result rev = compare_curves(b, a);
    switch (fwd.verdict) {
      case dominance_verdict::a_dominates_b:
        CHECK(rev.verdict == dominance_verdict::b_dominates_a);
        break;
      case dominance_verdict::b_dominates_a:
        CHECK(rev.verdict == dominance_verdict::a_dominates_b);
        break;
      default:
        CHECK(rev.verdict == fwd.verdict);
    }
    REQUIRE(rev.crossings.size() == fwd.crossings.size());
    for (std::size_t i = 0; i < fwd.crossings.size(); ++i)
      CHECK(rev.crossings[i] == Approx(fwd.crossings[i]).margin(1e-12));
  }
}

TEST_CASE("dominance agrees with all three index orderings") {
  std::mt19937_64 rng(7302);
  std::uniform_real_distribution<double> mix(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    const grouped_distribution base = testing::random_grouped(rng);
    if (base.group_count() < 2) continue;
    const grouped_distribution closer = towards_equality(base, mix(rng));
    const dominance_result result =
        compare_curves(lorenz_curve(closer), lorenz_curve(base));
    REQUIRE(result.verdict == dominance_verdict::a_dominates_b);

    // The dominating (higher) curve is less unequal under every index.
    const index_report less = make_report(closer);
    const index_report more = make_report(base);
    CHECK(less.gini <= more.gini + 1e-12);
    CHECK(less.pietra <= more.pietra + 1e-12);
    CHECK(less.normalized_kolkata <= more.normalized_kolkata + 1e-12);
  }
}

TEST_CASE("analytic curves with a shared fixed point cross there") {
  const lorenz_curve square(analytic_distribution(power_lorenz{2.0}));
  const lorenz_curve pareto(analytic_distribution(pareto_income{1.0, 2.0}));
  const dominance_result result = compare_curves(square, pareto);
  REQUIRE(result.verdict == dominance_verdict::crossing);
  REQUIRE(result.crossings.size() == 1);
  CHECK(result.crossings[0] == Approx((std::sqrt(5.0) - 1.0) / 2.0).margin(1e-9));
  CHECK(std::abs(square.value(result.crossings[0]) - pareto.value(result.crossings[0])) <= 1e-10);
}

TEST_CASE("curves weaving twice yield two crossings") {
  // Shared kink abscissae at 1/4, 1/2, 3/4 with income-share gaps +, -, +.
  const auto a = grouped_distribution::from_groups(
      std::vector<income_group>{{1, 0.4}, {1, 0.8}, {1, 1.2}, {1, 1.6}});
  const auto b = grouped_distribution::from_groups(
      std::vector<income_group>{{1, 0.32}, {1, 0.96}, {1, 1.04}, {1, 1.68}});
  const lorenz_curve curve_a(a);
  const lorenz_curve curve_b(b);
  const dominance_result result = compare_curves(curve_a, curve_b);
  REQUIRE(result.verdict == dominance_verdict::crossing);
  REQUIRE(result.crossings.size() == 2);
  CHECK(result.crossings[0] > 0.25);
  CHECK(result.crossings[0] < 0.5);
  CHECK(result.crossings[1] > 0.5);
  CHECK(result.crossings[1] < 0.75);
  for (double p : result.crossings)
    CHECK(std::abs(curve_a.value(p) - curve_b.value(p)) <= 1e-10);
}

TEST_CASE("income scaling leaves the curve equal to itself") {
  std::mt19937_64 rng(7303);
  const auto base = testing::random_grouped(rng);
  std::vector<income_group> scaled;
  for (const income_group& g : base.groups()) scaled.push_back({g.count, g.value * 1000.0});
  const dominance_result result = compare_curves(
      lorenz_curve(base), lorenz_curve(grouped_distribution::from_groups(scaled)));
  CHECK(result.verdict == dominance_verdict::equal);
}

TEST_CASE("ranking the worked examples") {
  const std::vector<any_distribution> dists{four_person_a(), four_person_b()};
  for (index_kind kind : {index_kind::kolkata, index_kind::gini, index_kind::pietra}) {
    const auto ranking = rank_by_index(dists, kind);
    REQUIRE(ranking.size() == 2);
    CHECK(ranking[0].input_index == 0);
    CHECK(ranking[1].input_index == 1);
    CHECK(ranking[0].rank == 1);
    CHECK(ranking[1].rank == 2);
  }
}

TEST_CASE("kolkata ties where gini ranks") {
  const std::vector<any_distribution> dists{
      analytic_distribution(uniform_income{0.0, 1.0}),
      analytic_distribution(piecewise_lorenz({{0.75, 0.0, 0.0, 1.0}, {1.0, -0.75, 1.75, 0.0}})),
  };
  const auto by_kolkata = rank_by_index(dists, index_kind::kolkata);
  CHECK(by_kolkata[0].rank == by_kolkata[1].rank);

  const auto by_gini = rank_by_index(dists, index_kind::gini);
  CHECK(by_gini[0].input_index == 1);  // 21/64 < 1/3
  CHECK(by_gini[1].input_index == 0);
  CHECK(by_gini[0].rank != by_gini[1].rank);
}

TEST_CASE("ranking guards and single element") {
  CHECK_THROWS_AS(rank_by_index({}, index_kind::gini), invalid_input);
  const std::vector<any_distribution> one{four_person_a()};
  const auto ranking = rank_by_index(one, index_kind::pietra);
  REQUIRE(ranking.size() == 1);
  CHECK(ranking[0].input_index == 0);
  CHECK(ranking[0].rank == 1);
}
