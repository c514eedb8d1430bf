#include "allostasis/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "allostasis/error.hpp"

namespace allostasis {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

Categorical::Categorical(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorCode::ZeroMass, "categorical must have at least one entry");
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p)) throw Error(ErrorCode::NonFinite, "categorical entry is not finite");
    if (p < 0.0) throw Error(ErrorCode::NegativeEntry, "categorical entry below zero");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::ZeroMass, "categorical entries sum to " + std::to_string(sum));
  }
}

Categorical Categorical::uniform(std::size_t n) {
  return Categorical(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Categorical Categorical::delta(std::size_t n, std::size_t at) {
  std::vector<double> p(n, 0.0);
  p.at(at) = 1.0;
  return Categorical(std::move(p));
}

double Categorical::max() const noexcept { return *std::max_element(probs_.begin(), probs_.end()); }
double Categorical::min() const noexcept { return *std::min_element(probs_.begin(), probs_.end()); }

LogWeights::LogWeights(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::DimensionMismatch, "log weights are empty");
  for (double w : weights_) {
    if (!std::isfinite(w)) throw Error(ErrorCode::NonFinite, "log weight is not finite");
  }
}

Categorical normalize(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorCode::ZeroMass, "cannot normalize an empty vector");
  double sum = 0.0;
  for (double x : v) {
    if (x < 0.0) throw Error(ErrorCode::NegativeEntry, "cannot normalize a negative entry");
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "cannot normalize a non-finite entry");
    sum += x;
  }
  if (sum <= 0.0) throw Error(ErrorCode::ZeroMass, "vector has zero mass");
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [sum](double x) { return x / sum; });
  return Categorical(std::move(out));
}

Categorical softmax(const LogWeights& w) {
  const auto weights = w.weights();
  const double shift = *std::max_element(weights.begin(), weights.end());
  std::vector<double> out(weights.size());
  std::transform(weights.begin(), weights.end(), out.begin(),
                 [shift](double x) { return std::exp(x - shift); });
  return normalize(out);
}

Categorical bayes_posterior(const Categorical& prior, std::span<const double> likelihood) {
  require_same_size(prior.size(), likelihood.size(), "bayes_posterior");
  std::vector<double> joint(prior.size());
  double evidence = 0.0;
  for (std::size_t s = 0; s < prior.size(); ++s) {
    if (likelihood[s] < 0.0) throw Error(ErrorCode::NegativeEntry, "likelihood entry below zero");
    joint[s] = likelihood[s] * prior[s];
    evidence += joint[s];
  }
  if (evidence <= 0.0) throw Error(ErrorCode::ZeroEvidence, "observation has zero evidence");
  for (double& j : joint) j /= evidence;
  return Categorical(std::move(joint));
}

double kl_divergence(const Categorical& p, const Categorical& q) {
  require_same_size(p.size(), q.size(), "kl_divergence");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      throw Error(ErrorCode::AbsoluteContinuity,
                  "p(" + std::to_string(i) + ") > 0 where q(" + std::to_string(i) + ") = 0");
    }
    kl += p[i] * std::log(p[i] / q[i]);
  }
  // Rounding can leave a tiny negative residue when p and q nearly agree.
  return std::max(kl, 0.0);
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double entropy(const Categorical& p) { return entropy(p.probs()); }

double surprisal(double p_obs) {
  if (!(p_obs > 0.0) || p_obs > 1.0 + kNormalizationTolerance) {
    throw Error(ErrorCode::DomainError, "surprisal needs p in (0, 1], got " + std::to_string(p_obs));
  }
  return p_obs >= 1.0 ? 0.0 : -std::log(p_obs);
}

double floored_log(double p) noexcept { return std::log(std::max(p, kProbabilityFloor)); }

}  // namespace allostasis
