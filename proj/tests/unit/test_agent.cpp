#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "allostasis/agent.hpp"
#include "allostasis/error.hpp"
#include "allostasis/trace_io.hpp"
#include "oracles.hpp"

using namespace allostasis;
namespace t = allostasis::testing;

namespace {

struct HandState {
  double energy = 0.7, social = 0.7, d = 0.7;
  double cortisol = 0.0, prev_surprisal = 0.0;
  bool food = false, friend_present = false, explore_pending = false;
  std::optional<Categorical> belief;
  Action last = Action::Explore;
};

// One step of variant C worked stage by stage from the oracles and the
// raw random streams. Learning is off, so the model never changes.
StepRecord hand_step_variant_c(HandState& h, const GenerativeModel& gm, RunStreams& rng,
                               double precision, std::size_t t) {
  StepRecord r;
  r.t = t;
  // 1. generate: both draws always happen
  const bool f = uniform01(rng.environment) < 0.2;
  const bool g = uniform01(rng.environment) < 0.2;
  h.food = h.explore_pending || f;
  h.friend_present = h.explore_pending || g;
  h.explore_pending = false;
  // 2. observe
  r.obs = ObservationBundle::make(h.energy < h.d, h.social < 0.7, h.food, h.friend_present);
  // 3. infer
  std::vector<double> prior_v(3);
  if (h.belief) {
    const auto p = t::oracle_predict(gm.transitions()[h.last], *h.belief);
    for (int s = 0; s < 3; ++s) prior_v[s] = static_cast<double>(p[s]);
  } else {
    prior_v = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  }
  const Categorical prior(prior_v);
  const auto post = t::oracle_bayes(gm, r.obs, prior);
  r.q_s = Categorical({double(post[0]), double(post[1]), double(post[2])});
  r.surprisal = static_cast<double>(-std::log(t::oracle_evidence(gm, r.obs, prior)));
  std::array<long double, 3> neg{};
  for (Action a : kAllActions) {
    const auto e = t::oracle_efe(gm, r.q_s, a);
    neg[index(a)] = -precision * (e.risk + e.ambiguity);
  }
  const long double hi = *std::max_element(neg.begin(), neg.end());
  long double z = 0.0L;
  for (auto& v : neg) z += (v = std::exp(v - hi));
  r.q_u = Categorical({double(neg[0] / z), double(neg[1] / z), double(neg[2] / z)});
  // 4. secrete
  if (t == 0) h.prev_surprisal = r.surprisal;
  const double prev_level = h.cortisol;
  r.surprisal_delta = r.surprisal - h.prev_surprisal;
  h.cortisol = std::clamp(h.cortisol + r.surprisal_delta + 1.0 - (r.q_u.max() - r.q_u.min()), 0.0, 1.0);
  h.prev_surprisal = r.surprisal;
  // 5. allostatic set point
  h.d = std::clamp(h.d / (1.0 + std::max(h.cortisol - prev_level, -0.999)), 0.05, 0.99);
  // 6. select (no tie expected for a generic seed)
  r.action = static_cast<Action>(std::max_element(r.q_u.begin(), r.q_u.end()) - r.q_u.begin());
  // 7. execute
  if (r.action == Action::Eat && h.food) h.energy = std::min(1.0, h.energy + 0.4);
  if (r.action == Action::Play && h.friend_present) h.social = std::min(1.0, h.social + 0.4);
  r.action_succeeded = r.action == Action::Explore || (r.action == Action::Eat && h.food) ||
                       (r.action == Action::Play && h.friend_present);
  if (r.action == Action::Explore) h.explore_pending = true;
  // 8. decay
  h.energy = std::max(0.0, h.energy - 0.03);
  h.social = std::max(0.0, h.social - 0.03);
  r.energy = h.energy;
  r.socialness = h.social;
  r.d_energy = h.d;
  r.cortisol = h.cortisol;
  r.alive = h.energy > 0.0;
  h.belief = r.q_s;
  h.last = r.action;
  return r;
}

void check_record(const StepRecord& got, const StepRecord& want) {
  CHECK(got.t == want.t);
  CHECK(got.obs == want.obs);
  for (std::size_t s = 0; s < 3; ++s) CHECK(got.q_s[s] == doctest::Approx(want.q_s[s]).epsilon(1e-12));
  for (std::size_t a = 0; a < 3; ++a) CHECK(got.q_u[a] == doctest::Approx(want.q_u[a]).epsilon(1e-9));
  CHECK(got.surprisal == doctest::Approx(want.surprisal).epsilon(1e-12));
  CHECK(got.surprisal_delta == doctest::Approx(want.surprisal_delta).epsilon(1e-12));
  CHECK(got.cortisol == doctest::Approx(want.cortisol).epsilon(1e-9));
  CHECK(got.d_energy == doctest::Approx(want.d_energy).epsilon(1e-9));
  CHECK(got.action == want.action);
  CHECK(got.action_succeeded == want.action_succeeded);
  CHECK(got.energy == doctest::Approx(want.energy).epsilon(1e-15));
  CHECK(got.socialness == doctest::Approx(want.socialness).epsilon(1e-15));
  CHECK(got.alive == want.alive);
  CHECK(got.lr_effective == 0.0);
}

}  // namespace

TEST_CASE("variant C steps match a hand-stepped oracle") {
  const SimulationConfig cfg;
  for (std::uint64_t seed : {1ULL, 2ULL, 17ULL, 12345ULL}) {
    CAPTURE(seed);
    Episode ep(cfg, ModelVariant::allostatic(), seed);
    const auto gm = build_generative_model(cfg.knobs);
    auto rng = RunStreams::from_seed(seed);
    HandState h;
    for (std::size_t step = 0; step < 5; ++step) {
      CAPTURE(step);
      check_record(ep.step(), hand_step_variant_c(h, gm, rng, cfg.knobs.policy_precision, step));
    }
    CHECK(ep.model().transitions() == gm.transitions());
  }
}

TEST_CASE("variant A keeps set point and transitions fixed") {
  const SimulationConfig cfg;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Episode ep(cfg, ModelVariant::homeostatic(), seed);
    const auto b0 = ep.model().transitions();
    bool saw_cortisol = false;
    while (ep.alive() && ep.steps_taken() < cfg.steps) {
      const auto r = ep.step();
      CHECK(r.d_energy == 0.7);
      CHECK(r.lr_effective == 0.0);
      saw_cortisol = saw_cortisol || r.cortisol > 0.0;
    }
    CHECK(ep.model().transitions() == b0);
    CHECK(saw_cortisol);  // still secreted and logged, only its effects are gated
  }
}

TEST_CASE("learning-rate gates per variant") {
  const SimulationConfig cfg;
  for (const auto& r : run_episode(cfg, ModelVariant::learning_only(), 3)) {
    CHECK(r.lr_effective == 0.05);
    CHECK(r.d_energy == 0.7);
  }
  Episode d(cfg, ModelVariant::allostatic_learning(), 3);
  const auto b0 = d.model().transitions();
  while (d.alive() && d.steps_taken() < 60) {
    const auto r = d.step();
    CHECK(r.lr_effective == doctest::Approx(0.05 * (1.0 - r.cortisol)).epsilon(1e-15));
  }
  CHECK_FALSE(d.model().transitions() == b0);
}

TEST_CASE("forced explore starves at step 24") {
  SimulationConfig cfg;
  cfg.forced_action = Action::Explore;
  for (const auto& v : {ModelVariant::homeostatic(), ModelVariant::allostatic_learning()}) {
    const auto trace = run_episode(cfg, v, 42);
    REQUIRE(trace.size() == 24);
    CHECK_FALSE(trace.back().alive);
    CHECK(trace.back().energy == 0.0);
    CHECK(trace[22].alive);
  }
}

TEST_CASE("episodes are deterministic") {
  const SimulationConfig cfg;
  const auto a = run_episode(cfg, ModelVariant::allostatic_learning(), 99);
  const auto b = run_episode(cfg, ModelVariant::allostatic_learning(), 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(format_trace_row(a[i]) == format_trace_row(b[i]));
}

TEST_CASE("every record satisfies the module invariants") {
  const SimulationConfig cfg;
  for (const auto& v : {ModelVariant::homeostatic(), ModelVariant::learning_only(),
                        ModelVariant::allostatic(), ModelVariant::allostatic_learning()}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto trace = run_episode(cfg, v, seed);
      REQUIRE_FALSE(trace.empty());
      for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& r = trace[i];
        REQUIRE(r.t == i);
        REQUIRE(r.cortisol >= 0.0);
        REQUIRE(r.cortisol <= 1.0);
        REQUIRE(r.d_energy >= kMinSetPoint);
        REQUIRE(r.d_energy <= kMaxSetPoint);
        REQUIRE(r.energy >= 0.0);
        REQUIRE(r.energy <= 1.0);
        REQUIRE(r.socialness >= 0.0);
        REQUIRE(r.socialness <= 1.0);
        REQUIRE(r.surprisal >= 0.0);
        REQUIRE(r.alive == (r.energy > 0.0));
        REQUIRE(r.alive == (i + 1 < trace.size() || trace.size() == cfg.steps));
        REQUIRE(r.q_s.size() == kNumStates);
        REQUIRE(r.q_u.size() == kNumActions);
        if (i > 0) {
          REQUIRE(r.surprisal_delta == doctest::Approx(r.surprisal - trace[i - 1].surprisal));
          if (trace[i - 1].action == Action::Explore) {
            REQUIRE(r.obs[Modality::Food] == 1);
            REQUIRE(r.obs[Modality::Friend] == 1);
          }
        } else {
          REQUIRE(r.surprisal_delta == 0.0);
        }
      }
    }
  }
}

TEST_CASE("stepping a dead agent throws") {
  SimulationConfig cfg;
  cfg.forced_action = Action::Play;
  Episode ep(cfg, ModelVariant::homeostatic(), 1);
  while (ep.alive()) ep.step();
  CHECK_THROWS_AS(ep.step(), Error);
}

TEST_CASE("stage logger sees the nine stages in order") {
  Episode ep(SimulationConfig{}, ModelVariant::allostatic_learning(), 5);
  std::vector<int> stages;
  ep.set_stage_logger([&](std::size_t, Stage s, std::string_view) { stages.push_back(int(s)); });
  ep.step();
  ep.step();
  REQUIRE(stages.size() == 18);
  for (int i = 0; i < 18; ++i) CHECK(stages[i] == i % 9 + 1);
}

TEST_CASE("invalid config is rejected") {
  SimulationConfig cfg;
  cfg.gamma = -0.1;
  CHECK_THROWS_AS(run_episode(cfg, ModelVariant::homeostatic(), 1), Error);
  CHECK_THROWS_AS(run_episode(SimulationConfig{}, ModelVariant{false, false, true}, 1), Error);
}
