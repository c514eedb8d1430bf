#include <vector>

#include <doctest.h>

#include "allostasis/error.hpp"
#include "allostasis/metrics.hpp"

using namespace allostasis;

namespace {

std::vector<StepRecord> alive_trace(std::size_t n, double value = 0.7, double d = 0.7) {
  std::vector<StepRecord> trace(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = trace[i];
    r.t = i;
    r.energy = r.socialness = value;
    r.d_energy = r.d_social = d;
    r.action = kAllActions[i % 3];
    r.cortisol = 0.5;
  }
  return trace;
}

std::vector<StepRecord> with_presence(std::size_t n, std::vector<std::size_t> food,
                                      std::vector<std::size_t> friends) {
  auto trace = alive_trace(n);
  for (auto t : food) trace[t].obs[Modality::Food] = 1;
  for (auto t : friends) trace[t].obs[Modality::Friend] = 1;
  return trace;
}

}  // namespace

TEST_CASE("filter rule") {
  CHECK(filter_valid_run(with_presence(300, {3, 17}, {5, 6})));
  CHECK_FALSE(filter_valid_run(with_presence(300, {3, 17, 40}, {5})));
  CHECK_FALSE(filter_valid_run(with_presence(300, {3, 17}, {5, 50, 60})));  // t = 50 is outside
  CHECK(filter_valid_run(with_presence(300, {0, 49}, {48, 49})));
  CHECK(filter_valid_run(with_presence(31, {1, 2}, {29, 30})));  // died at t = 30
  CHECK_FALSE(filter_valid_run(with_presence(10, {1}, {2, 3})));
}

TEST_CASE("viability") {
  CHECK(compute_metrics(alive_trace(300), 300).viability_pct == 100.0);
  auto dead = alive_trace(124);
  dead.back().energy = 0.0;
  dead.back().alive = false;
  const auto m = compute_metrics(dead, 300);
  CHECK(m.steps_survived == 123);
  CHECK(m.viability_pct == 41.0);
  CHECK_THROWS_AS(compute_metrics(std::vector<StepRecord>{}, 300), Error);
}

TEST_CASE("comfort and shares") {
  const auto m = compute_metrics(alive_trace(300), 300, 9);
  CHECK(m.seed == 9);
  CHECK(m.median_comfort_pct == doctest::Approx(100.0));
  CHECK(m.energy_comfort_pct == doctest::Approx(100.0));
  CHECK(m.mean_cortisol == 0.5);
  CHECK(m.action_pct[0] + m.action_pct[1] + m.action_pct[2] == doctest::Approx(100.0));
  CHECK(m.action_pct[0] == doctest::Approx(100.0 / 3));

  // comfort uses each step's own set point and is not capped at 100%
  auto trace = alive_trace(3, 0.6, 0.5);
  const auto c = compute_metrics(trace, 3);
  CHECK(c.energy_comfort_pct == doctest::Approx(120.0));
}

TEST_CASE("summary statistics") {
  const std::vector<double> v{40, 42};
  const auto ms = mean_sem(v);
  CHECK(ms.mean == 41.0);
  CHECK(ms.sem == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mean_sem(std::vector<double>{5}).sem == 0.0);
  CHECK(median(std::vector<double>{3, 1, 2}) == 2.0);
  CHECK(median(std::vector<double>{4, 1, 2, 3}) == 2.5);
  CHECK(median(std::vector<double>{}) == 0.0);
}
