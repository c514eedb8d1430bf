#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace allostasis {

/// Probabilities entering a logarithm are floored here so ln never returns -inf.
inline constexpr double kProbabilityFloor = 1e-16;
/// Tolerance on the sum of a Categorical.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Normalized probability vector. Every instance satisfies: non-empty, entries
/// >= 0, sum within kNormalizationTolerance of 1.
class Categorical {
 public:
  /// Validates and wraps already-normalized probabilities.
  explicit Categorical(std::vector<double> probs);
  Categorical(std::initializer_list<double> probs) : Categorical(std::vector<double>(probs)) {}

  static Categorical uniform(std::size_t n);
  static Categorical delta(std::size_t n, std::size_t at);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  double max() const noexcept;
  double min() const noexcept;

  friend bool operator==(const Categorical&, const Categorical&) = default;

 private:
  std::vector<double> probs_;
};

/// Unnormalized log-domain scores; entries are finite.
class LogWeights {
 public:
  explicit LogWeights(std::vector<double> weights);
  LogWeights(std::initializer_list<double> weights) : LogWeights(std::vector<double>(weights)) {}

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Scales a nonnegative vector to unit mass. Throws ZeroMass / NegativeEntry.
Categorical normalize(std::span<const double> v);

/// Max-subtracted softmax.
Categorical softmax(const LogWeights& w);

/// posterior(s) proportional to likelihood(s) * prior(s). Throws ZeroEvidence
/// when the normalizer vanishes.
Categorical bayes_posterior(const Categorical& prior, std::span<const double> likelihood);

/// KL(p || q) with 0 ln 0 = 0. Throws AbsoluteContinuity when p(i) > 0 = q(i).
double kl_divergence(const Categorical& p, const Categorical& q);

/// Shannon entropy in nats, 0 ln 0 = 0.
double entropy(const Categorical& p);
double entropy(std::span<const double> p);

/// -ln(p). Throws DomainError for p outside (0, 1].
double surprisal(double p_obs);

/// ln(max(p, kProbabilityFloor)).
double floored_log(double p) noexcept;

}  // namespace allostasis
