#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "allostasis/inference.hpp"
#include "allostasis/random.hpp"
#include "allostasis/types.hpp"

namespace allostasis {

/// Small dense column-major matrix; columns are the conditioning variable.
template <std::size_t Rows, std::size_t Cols>
class Matrix {
 public:
  static constexpr std::size_t kRows = Rows;
  static constexpr std::size_t kCols = Cols;

  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[c * Rows + r]; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[c * Rows + r]; }

  std::span<const double, Rows> column(std::size_t c) const noexcept {
    return std::span<const double, Rows>(data_.data() + c * Rows, Rows);
  }
  std::span<double, Rows> column(std::size_t c) noexcept {
    return std::span<double, Rows>(data_.data() + c * Rows, Rows);
  }

  std::array<double, Rows> apply(std::span<const double> x) const noexcept {
    std::array<double, Rows> out{};
    for (std::size_t c = 0; c < Cols; ++c) {
      for (std::size_t r = 0; r < Rows; ++r) out[r] += (*this)(r, c) * x[c];
    }
    return out;
  }

  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<double, Rows * Cols> data_{};
};

/// p(outcome | state) for one modality.
using LikelihoodMatrix = Matrix<kNumOutcomes, kNumStates>;
/// p(next state | previous state) for one action.
using TransitionMatrix = Matrix<kNumStates, kNumStates>;
using ConcentrationMatrix = Matrix<kNumStates, kNumStates>;

struct ObservationModel {
  std::array<LikelihoodMatrix, kNumModalities> modality{};

  const LikelihoodMatrix& operator[](Modality m) const noexcept { return modality[index(m)]; }
  LikelihoodMatrix& operator[](Modality m) noexcept { return modality[index(m)]; }
  friend bool operator==(const ObservationModel&, const ObservationModel&) = default;
};

struct TransitionModel {
  std::array<TransitionMatrix, kNumActions> action{};

  const TransitionMatrix& operator[](Action a) const noexcept { return action[index(a)]; }
  TransitionMatrix& operator[](Action a) noexcept { return action[index(a)]; }
  friend bool operator==(const TransitionModel&, const TransitionModel&) = default;
};

/// Dirichlet concentrations over transitions; column-normalizing gives B.
struct DirichletStore {
  std::array<ConcentrationMatrix, kNumActions> action{};

  const ConcentrationMatrix& operator[](Action a) const noexcept { return action[index(a)]; }
  ConcentrationMatrix& operator[](Action a) noexcept { return action[index(a)]; }
  friend bool operator==(const DirichletStore&, const DirichletStore&) = default;
};

/// Unnormalized log-preferences over each modality's two outcomes.
struct PreferenceModel {
  std::array<std::array<double, kNumOutcomes>, kNumModalities> log_preference{};

  const std::array<double, kNumOutcomes>& operator[](Modality m) const noexcept {
    return log_preference[index(m)];
  }
  std::array<double, kNumOutcomes>& operator[](Modality m) noexcept {
    return log_preference[index(m)];
  }
};

struct EfeTerms {
  double risk = 0.0;
  double ambiguity = 0.0;
  double total = 0.0;  // risk + ambiguity
};

/// Expected free energy of each one-step policy.
using EfeBreakdown = std::array<EfeTerms, kNumActions>;

/// Throws ZeroMass unless every column is a Categorical.
template <std::size_t R, std::size_t C>
void validate_stochastic(const Matrix<R, C>& m, const char* what);

/// The agent's POMDP: likelihood A, transitions B, preferences C, initial
/// prior D, and the Dirichlet counts from which B is learned.
class GenerativeModel {
 public:
  /// Dirichlet counts are initialized to B * concentration.
  GenerativeModel(ObservationModel likelihood, TransitionModel transitions,
                  PreferenceModel preferences, Categorical initial_prior,
                  double concentration = 1.0);

  const ObservationModel& likelihood() const noexcept { return likelihood_; }
  const TransitionModel& transitions() const noexcept { return transitions_; }
  const PreferenceModel& preferences() const noexcept { return preferences_; }
  const Categorical& initial_prior() const noexcept { return initial_prior_; }
  const DirichletStore& dirichlet() const noexcept { return dirichlet_; }

  /// B_action * q_prev.
  Categorical predictive_state(const Categorical& q_prev, Action action) const;

  /// Product over modalities of A_m[obs_m, s].
  std::array<double, kNumStates> joint_likelihood(const ObservationBundle& obs) const noexcept;

  /// Exact Bayes over the single hidden factor.
  Categorical infer_state(const ObservationBundle& obs, const Categorical& prior_pred) const;

  /// p(o) under the predictive prior, floored at kProbabilityFloor.
  double marginal_obs_likelihood(const ObservationBundle& obs,
                                 const Categorical& prior_pred) const;

  /// Risk (KL of predicted outcomes from softmax(C_m)) plus ambiguity
  /// (expected likelihood entropy), summed over modalities.
  EfeTerms expected_free_energy(const Categorical& q_s, Action action) const;
  EfeBreakdown evaluate_actions(const Categorical& q_s) const;

  /// Adds lr * q_curr q_prev^T to the counts of `action` and renormalizes
  /// that action's transition matrix.
  void update_transitions(const Categorical& q_prev, const Categorical& q_curr, Action action,
                          double learning_rate);

 private:
  ObservationModel likelihood_;
  TransitionModel transitions_;
  PreferenceModel preferences_;
  Categorical initial_prior_;
  DirichletStore dirichlet_;
  // softmax(C_m), cached since C never changes.
  std::array<Categorical, kNumModalities> preferred_outcomes_;
};

/// softmax(-precision * G) over the three actions.
Categorical action_posterior(const EfeBreakdown& efe, double precision = 1.0);

/// Argmax of q_u; exact ties resolved uniformly with `rng`.
Action select_action(const Categorical& q_u, Rng& rng);

}  // namespace allostasis
