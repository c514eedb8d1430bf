#include "allostasis/generative_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "allostasis/error.hpp"

namespace allostasis {

template <std::size_t R, std::size_t C>
void validate_stochastic(const Matrix<R, C>& m, const char* what) {
  for (std::size_t c = 0; c < C; ++c) {
    double sum = 0.0;
    for (double p : m.column(c)) {
      if (p < 0.0) throw Error(ErrorCode::NegativeEntry, std::string(what) + " has a negative entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
      throw Error(ErrorCode::ZeroMass, std::string(what) + " column " + std::to_string(c) +
                                           " sums to " + std::to_string(sum));
    }
  }
}

template void validate_stochastic(const LikelihoodMatrix&, const char*);
template void validate_stochastic(const TransitionMatrix&, const char*);

namespace {

std::array<Categorical, kNumModalities> preferred_outcomes(const PreferenceModel& c) {
  auto pref = [&](Modality m) {
    const auto& w = c[m];
    return softmax(LogWeights(std::vector<double>(w.begin(), w.end())));
  };
  return {pref(Modality::Tummy), pref(Modality::Lonely), pref(Modality::Food),
          pref(Modality::Friend)};
}

}  // namespace

GenerativeModel::GenerativeModel(ObservationModel likelihood, TransitionModel transitions,
                                 PreferenceModel preferences, Categorical initial_prior,
                                 double concentration)
    : likelihood_(likelihood),
      transitions_(transitions),
      preferences_(preferences),
      initial_prior_(std::move(initial_prior)),
      preferred_outcomes_(preferred_outcomes(preferences)) {
  if (initial_prior_.size() != kNumStates) {
    throw Error(ErrorCode::DimensionMismatch, "initial prior must cover the three states");
  }
  if (!(concentration > 0.0)) {
    throw Error(ErrorCode::ConfigError, "Dirichlet concentration must be positive");
  }
  for (Modality m : kAllModalities) validate_stochastic(likelihood_[m], "likelihood matrix");
  for (Action a : kAllActions) {
    validate_stochastic(transitions_[a], "transition matrix");
    for (std::size_t c = 0; c < kNumStates; ++c) {
      for (std::size_t r = 0; r < kNumStates; ++r) {
        dirichlet_[a](r, c) = transitions_[a](r, c) * concentration;
      }
    }
  }
}

Categorical GenerativeModel::predictive_state(const Categorical& q_prev, Action action) const {
  if (q_prev.size() != kNumStates) {
    throw Error(ErrorCode::DimensionMismatch, "belief must cover the three states");
  }
  const auto next = transitions_[action].apply(q_prev.probs());
  return normalize(next);
}

std::array<double, kNumStates> GenerativeModel::joint_likelihood(
    const ObservationBundle& obs) const noexcept {
  std::array<double, kNumStates> l{};
  l.fill(1.0);
  for (Modality m : kAllModalities) {
    for (std::size_t s = 0; s < kNumStates; ++s) l[s] *= likelihood_[m](obs[m], s);
  }
  return l;
}

Categorical GenerativeModel::infer_state(const ObservationBundle& obs,
                                         const Categorical& prior_pred) const {
  const auto l = joint_likelihood(obs);
  return bayes_posterior(prior_pred, l);
}

double GenerativeModel::marginal_obs_likelihood(const ObservationBundle& obs,
                                                const Categorical& prior_pred) const {
  const auto l = joint_likelihood(obs);
  double p = 0.0;
  for (std::size_t s = 0; s < kNumStates; ++s) p += l[s] * prior_pred[s];
  return std::clamp(p, kProbabilityFloor, 1.0);
}

EfeTerms GenerativeModel::expected_free_energy(const Categorical& q_s, Action action) const {
  const Categorical next = predictive_state(q_s, action);
  EfeTerms terms;
  for (Modality m : kAllModalities) {
    const auto& a = likelihood_[m];
    const Categorical predicted_outcome = normalize(a.apply(next.probs()));
    terms.risk += kl_divergence(predicted_outcome, preferred_outcomes_[index(m)]);
    for (std::size_t s = 0; s < kNumStates; ++s) {
      terms.ambiguity += next[s] * entropy(a.column(s));
    }
  }
  terms.total = terms.risk + terms.ambiguity;
  return terms;
}

EfeBreakdown GenerativeModel::evaluate_actions(const Categorical& q_s) const {
  EfeBreakdown out;
  for (Action a : kAllActions) out[index(a)] = expected_free_energy(q_s, a);
  return out;
}

void GenerativeModel::update_transitions(const Categorical& q_prev, const Categorical& q_curr,
                                         Action action, double learning_rate) {
  if (!(learning_rate >= 0.0)) {
    throw Error(ErrorCode::DomainError, "learning rate must be non-negative");
  }
  if (q_prev.size() != kNumStates || q_curr.size() != kNumStates) {
    throw Error(ErrorCode::DimensionMismatch, "beliefs must cover the three states");
  }
  if (learning_rate == 0.0) return;

  auto& counts = dirichlet_[action];
  for (std::size_t j = 0; j < kNumStates; ++j) {
    for (std::size_t i = 0; i < kNumStates; ++i) counts(i, j) += learning_rate * q_curr[i] * q_prev[j];
  }
  auto& b = transitions_[action];
  for (std::size_t j = 0; j < kNumStates; ++j) {
    double total = 0.0;
    for (double c : counts.column(j)) total += c;
    if (!(total > 0.0)) continue;
    for (std::size_t i = 0; i < kNumStates; ++i) b(i, j) = counts(i, j) / total;
  }
}

Categorical action_posterior(const EfeBreakdown& efe, double precision) {
  if (!(precision > 0.0)) throw Error(ErrorCode::DomainError, "policy precision must be positive");
  std::vector<double> neg_g(kNumActions);
  std::transform(efe.begin(), efe.end(), neg_g.begin(),
                 [precision](const EfeTerms& t) { return -precision * t.total; });
  return softmax(LogWeights(std::move(neg_g)));
}

Action select_action(const Categorical& q_u, Rng& rng) {
  const double best = q_u.max();
  std::array<std::size_t, kNumActions> ties{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < q_u.size() && i < kNumActions; ++i) {
    if (q_u[i] == best) ties[n++] = i;
  }
  const std::size_t pick = n == 1 ? ties[0] : ties[uniform_index(rng, n)];
  return static_cast<Action>(pick);
}

}  // namespace allostasis
