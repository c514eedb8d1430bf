#pragma once

// Randomized property checks. Each returns a list of human-readable
// failures; an empty list means the property held on every sample.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "allostasis/cortisol.hpp"
#include "allostasis/environment.hpp"
#include "allostasis/error.hpp"
#include "allostasis/generative_model.hpp"
#include "allostasis/inference.hpp"
#include "allostasis/physiology.hpp"
#include "oracles.hpp"

namespace allostasis::testing {

struct Property {
  std::string name;
  std::function<std::vector<std::string>()> check;
};

inline constexpr int kSamples = 1000;
inline constexpr double kOracleTol = 1e-9;
inline constexpr double kDirichletTol = 1e-12;

namespace detail {

inline void expect_categorical(std::vector<std::string>& fails, const Categorical& c,
                               std::size_t n, const char* what, int sample) {
  double total = 0.0;
  bool bad = c.size() != n;
  for (double p : c) {
    bad = bad || !(p >= 0.0) || !std::isfinite(p);
    total += p;
  }
  if (bad || std::abs(total - 1.0) > kNormalizationTolerance) {
    fails.push_back(fmt::format("{} sample {}: not a categorical (sum {})", what, sample, total));
  }
}

inline void expect_close(std::vector<std::string>& fails, long double want, double got,
                         double tol, const std::string& what) {
  if (!(std::abs(static_cast<long double>(got) - want) <= tol)) {
    fails.push_back(fmt::format("{}: got {} want {}", what, got, static_cast<double>(want)));
  }
}

}  // namespace detail

inline std::vector<std::string> check_categorical_invariants() {
  std::vector<std::string> fails;
  OracleRng rng(101);
  std::uniform_real_distribution<double> wide(-50.0, 50.0);
  for (int i = 0; i < kSamples; ++i) {
    const std::size_t n = 2 + i % 4;
    std::vector<double> raw(n);
    for (auto& x : raw) x = draw_positive(rng) * 10.0;
    detail::expect_categorical(fails, normalize(raw), n, "normalize", i);

    std::vector<double> logits(n);
    for (auto& x : logits) x = wide(rng);
    detail::expect_categorical(fails, softmax(LogWeights(logits)), n, "softmax", i);

    const auto gm = random_model(rng);
    const auto q = random_categorical(rng, kNumStates, true);
    for (Action a : kAllActions) {
      detail::expect_categorical(fails, gm.predictive_state(q, a), kNumStates, "predictive", i);
    }
    const auto obs = bundle_from_joint(i % 16);
    const auto prior = random_categorical(rng, kNumStates);
    detail::expect_categorical(fails, gm.infer_state(obs, prior), kNumStates, "posterior", i);
    const auto qu = action_posterior(gm.evaluate_actions(q), 1.0 + 20.0 * draw_positive(rng));
    detail::expect_categorical(fails, qu, kNumActions, "action posterior", i);

    const auto p = random_categorical(rng, n, true);
    const auto r = random_categorical(rng, n);
    const double kl = kl_divergence(p, r);
    if (!(kl >= 0.0)) fails.push_back(fmt::format("kl sample {} negative: {}", i, kl));
    if (kl_divergence(p, p) > 1e-15) fails.push_back(fmt::format("kl(p,p) sample {} nonzero", i));
    const double h = entropy(p);
    if (!(h >= 0.0 && h <= std::log(static_cast<double>(n)) + 1e-12)) {
      fails.push_back(fmt::format("entropy sample {} out of [0, ln n]: {}", i, h));
    }
    const double surprise = surprisal(gm.marginal_obs_likelihood(obs, prior));
    if (!(surprise >= 0.0) || !std::isfinite(surprise)) {
      fails.push_back(fmt::format("surprisal sample {} invalid: {}", i, surprise));
    }
  }
  // Invalid inputs are rejected at construction, never silently repaired.
  const auto rejects = [&](const char* what, auto&& fn) {
    try {
      fn();
      fails.push_back(fmt::format("{} was accepted", what));
    } catch (const Error&) {
    }
  };
  rejects("negative entry", [] { Categorical({-0.1, 1.1}); });
  rejects("mass 0.9", [] { Categorical({0.4, 0.5}); });
  rejects("empty", [] { Categorical(std::vector<double>{}); });
  rejects("NaN", [] { Categorical({std::numeric_limits<double>::quiet_NaN(), 1.0}); });
  rejects("normalize zeros", [] { normalize(std::vector<double>{0.0, 0.0}); });
  rejects("infinite log weight", [] { LogWeights({0.0, std::numeric_limits<double>::infinity()}); });
  return fails;
}

inline std::vector<std::string> check_bayes_oracle() {
  std::vector<std::string> fails;
  OracleRng rng(202);
  for (int i = 0; i < kSamples; ++i) {
    const auto gm = random_model(rng);
    const auto q_prev = random_categorical(rng, kNumStates);
    const Action a = kAllActions[i % kNumActions];
    const auto prior = gm.predictive_state(q_prev, a);
    const auto want_prior = oracle_predict(gm.transitions()[a], q_prev);
    for (std::size_t s = 0; s < kNumStates; ++s) {
      detail::expect_close(fails, want_prior[s], prior[s], kOracleTol,
                           fmt::format("model {} predictive[{}]", i, s));
    }
    for (std::size_t j = 0; j < 16; ++j) {
      const auto obs = bundle_from_joint(j);
      const auto post = gm.infer_state(obs, prior);
      const auto want = oracle_bayes(gm, obs, prior);
      for (std::size_t s = 0; s < kNumStates; ++s) {
        detail::expect_close(fails, want[s], post[s], kOracleTol,
                             fmt::format("model {} obs {} posterior[{}]", i, j, s));
      }
      detail::expect_close(fails, oracle_evidence(gm, obs, prior),
                           gm.marginal_obs_likelihood(obs, prior), kOracleTol,
                           fmt::format("model {} obs {} evidence", i, j));
    }
    if (fails.size() > 20) break;
  }
  return fails;
}

inline std::vector<std::string> check_efe_oracle() {
  std::vector<std::string> fails;
  OracleRng rng(303);
  for (int i = 0; i < kSamples; ++i) {
    const auto gm = random_model(rng);
    const auto q = random_categorical(rng, kNumStates, true);
    for (Action a : kAllActions) {
      const auto got = gm.expected_free_energy(q, a);
      const auto want = oracle_efe(gm, q, a);
      const auto tag = fmt::format("model {} action {}", i, to_string(a));
      detail::expect_close(fails, want.risk, got.risk, kOracleTol, tag + " risk");
      detail::expect_close(fails, want.ambiguity, got.ambiguity, kOracleTol, tag + " ambiguity");
      detail::expect_close(fails, want.risk + want.ambiguity, got.total, kOracleTol, tag + " total");
    }
    if (fails.size() > 20) break;
  }
  return fails;
}

inline std::vector<std::string> check_dirichlet_oracle() {
  std::vector<std::string> fails;
  OracleRng rng(404);
  for (int i = 0; i < kSamples; ++i) {
    auto gm = random_model(rng);
    const Action a = kAllActions[i % kNumActions];
    const auto before = gm.dirichlet();
    const auto q_prev = random_categorical(rng, kNumStates, true);
    const auto q_curr = random_categorical(rng, kNumStates, true);
    const double lr = 0.2 * draw_positive(rng, 0.0);
    gm.update_transitions(q_prev, q_curr, a, lr);
    const auto want = oracle_dirichlet_update(before[a], q_prev, q_curr, lr);
    for (std::size_t j = 0; j < kNumStates; ++j) {
      double col = 0.0;
      for (std::size_t r = 0; r < kNumStates; ++r) col += want(r, j);
      for (std::size_t r = 0; r < kNumStates; ++r) {
        const auto tag = fmt::format("sample {} entry ({},{})", i, r, j);
        detail::expect_close(fails, want(r, j), gm.dirichlet()[a](r, j), kDirichletTol, tag + " count");
        detail::expect_close(fails, want(r, j) / col, gm.transitions()[a](r, j), kDirichletTol,
                             tag + " transition");
      }
    }
    for (Action other : kAllActions) {
      if (other != a && !(gm.dirichlet()[other] == before[other])) {
        fails.push_back(fmt::format("sample {}: counts of {} changed", i, to_string(other)));
      }
    }
    if (fails.size() > 20) break;
  }
  return fails;
}

// Exact arithmetic of the decay and hormone equations on hand-worked cases.
inline std::vector<std::string> check_equation_arithmetic() {
  std::vector<std::string> fails;
  const auto exact = [&](double got, double want, const char* what) {
    if (std::abs(got - want) > 1e-12) fails.push_back(fmt::format("{}: got {} want {}", what, got, want));
  };
  {
    PhysiologyState p;
    p.energy.value = 0.70;
    exact(decay_step(p).energy.value, 0.67, "decay 0.70");
    p.energy.value = 0.02;
    const auto dead = decay_step(p);
    exact(dead.energy.value, 0.0, "decay floors at 0");
    if (dead.alive) fails.push_back("energy 0 must be fatal");
    p.energy.value = 0.5;
    exact(apply_consumption(p, ActionOutcome{Action::Eat, true, false}).energy.value, 0.9, "eat +0.4");
    p.energy.value = 0.8;
    exact(apply_consumption(p, ActionOutcome{Action::Eat, true, false}).energy.value, 1.0, "eat capped");
  }
  {
    const CortisolState c{0.3, 2.0, 0.1};
    exact(secrete(c, 2.0, Categorical{1.0, 0.0, 0.0}).level, 0.3, "confident and unsurprised");
  }
  {
    const CortisolState c{0.1, 1.0, 0.0};
    exact(secrete(c, 1.5, Categorical{0.6, 0.25, 0.15}).level, 1.0, "clamped at 1");
  }
  {
    const CortisolState c{0.2, 1.0, 0.4};
    const auto next = secrete(c, 0.5, Categorical{0.6, 0.25, 0.15});
    exact(next.level, 0.25, "0.2 - 0.5 + 0.55");
    exact(next.prev_level, 0.2, "previous level carried");
    exact(next.prev_surprisal, 0.5, "previous surprisal carried");
  }
  exact(secrete(CortisolState{0.0, 1.0, 0.0}, 1.0, Categorical::uniform(3)).level, 1.0,
        "maximal indecision");
  exact(secrete(CortisolState{0.5, 3.0, 0.0}, 0.0, Categorical{1.0, 0.0, 0.0}).level, 0.0,
        "clamped at 0");
  exact(adjust_set_point(0.7, CortisolState{0.4, 0.0, 0.4}), 0.7, "unchanged set point");
  exact(adjust_set_point(0.7, CortisolState{0.5, 0.0, 0.4}), 0.7 / 1.1, "rise of 0.1");
  exact(adjust_set_point(0.7, CortisolState{0.3, 0.0, 0.4}), 0.7 / 0.9, "drop of 0.1");
  exact(adjust_set_point(0.7, CortisolState{1.0, 0.0, 0.0}), 0.35, "rise of 1");
  exact(adjust_set_point(0.7, CortisolState{0.0, 0.0, 1.0}), kMaxSetPoint, "upper clamp");
  exact(adjust_set_point(0.06, CortisolState{1.0, 0.0, 0.0}), kMinSetPoint, "lower clamp");
  exact(modulated_learning_rate(0.05, CortisolState{1.0, 0.0, 0.0}), 0.0, "full suppression");
  exact(modulated_learning_rate(0.05, CortisolState{0.4, 0.0, 0.0}), 0.03, "0.05 * 0.6");
  exact(modulated_learning_rate(0.05, CortisolState{0.0, 0.0, 0.0}), 0.05, "no suppression");
  return fails;
}

inline std::vector<Property> all_properties() {
  return {
      {"categorical invariants", check_categorical_invariants},
      {"bayes vs enumeration oracle", check_bayes_oracle},
      {"efe vs 16-outcome oracle", check_efe_oracle},
      {"dirichlet vs outer-product oracle", check_dirichlet_oracle},
      {"update-equation arithmetic", check_equation_arithmetic},
  };
}

}  // namespace allostasis::testing
