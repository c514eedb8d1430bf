#include "allostasis/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "allostasis/error.hpp"

namespace allostasis {

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::ConfigError, message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  // from_chars for double is not available on every libstdc++ we target.
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    config_error(fmt::format("{}: '{}' is not a number", key, text));
  }
  if (used != s.size() || !std::isfinite(v)) {
    config_error(fmt::format("{}: '{}' is not a finite number", key, text));
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    config_error(fmt::format("{}: '{}' is not a non-negative integer", key, text));
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  config_error(fmt::format("{}: '{}' is not a boolean", key, text));
}

std::vector<double> parse_list(std::string_view key, std::string_view text, std::size_t expected) {
  std::vector<double> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(parse_double(key, token));
  if (out.size() != expected) {
    config_error(fmt::format("{}: expected {} numbers, got {}", key, expected, out.size()));
  }
  return out;
}

template <std::size_t R, std::size_t C>
Matrix<R, C> parse_matrix(std::string_view key, std::string_view text) {
  const auto values = parse_list(key, text, R * C);
  Matrix<R, C> m;
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t r = 0; r < R; ++r) m(r, c) = values[c * R + r];
  }
  return m;
}

template <std::size_t R, std::size_t C>
std::string format_matrix(const Matrix<R, C>& m) {
  return fmt::format("{}", fmt::join(m.data(), " "));
}

void check(bool ok, const std::string& message) {
  if (!ok) config_error(message);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

LikelihoodMatrix likelihood_columns(double strength, MotivationState signal_state,
                                    std::optional<MotivationState> quiet_state) {
  LikelihoodMatrix m;
  for (std::size_t s = 0; s < kNumStates; ++s) {
    double p_signal = 0.5;
    if (s == index(signal_state)) p_signal = strength;
    if (quiet_state && s == index(*quiet_state)) p_signal = 1.0 - strength;
    m(0, s) = 1.0 - p_signal;
    m(1, s) = p_signal;
  }
  return m;
}

TransitionMatrix consummatory_transition(const ModelKnobs& k, MotivationState relieved) {
  TransitionMatrix b;
  const std::size_t satisfied = index(MotivationState::Satisfied);
  for (std::size_t from = 0; from < kNumStates; ++from) {
    const bool relief = from == index(relieved);
    const std::size_t target = relief ? satisfied : from;
    const double mass = relief ? k.transition_bias : k.transition_persistence;
    for (std::size_t to = 0; to < kNumStates; ++to) {
      b(to, from) = to == target ? mass : (1.0 - mass) / 2.0;
    }
  }
  return b;
}

}  // namespace

std::string ModelVariant::name() const {
  for (std::string_view n : {"A", "B", "C", "D"}) {
    if (*preset(n) == *this) return std::string(n);
  }
  return "custom";
}

std::optional<ModelVariant> ModelVariant::preset(std::string_view name) {
  if (name == "A" || name == "a") return homeostatic();
  if (name == "B" || name == "b") return learning_only();
  if (name == "C" || name == "c") return allostatic();
  if (name == "D" || name == "d") return allostatic_learning();
  return std::nullopt;
}

void validate(const SimulationConfig& c) {
  check(c.steps >= 1, "steps must be at least 1");
  check(is_probability(c.resource_probability), "resource_probability must lie in [0, 1]");
  check(c.gamma >= 0.0 && c.gamma <= 1.0, "gamma must lie in [0, 1]");
  check(c.learning_rate >= 0.0, "lambda must be non-negative");
  check(is_probability(c.initial_energy), "initial_energy must lie in [0, 1]");
  check(c.initial_energy > 0.0, "initial_energy must be positive");
  check(is_probability(c.initial_socialness), "initial_socialness must lie in [0, 1]");
  check(c.set_point >= 0.05 && c.set_point <= 0.99, "set_point must lie in [0.05, 0.99]");
  check(c.consumption_gain >= 0.0 && c.consumption_gain <= 1.0,
        "consumption_gain must lie in [0, 1]");

  const auto& k = c.knobs;
  check(k.likelihood_strength > 0.0 && k.likelihood_strength < 1.0,
        "likelihood_strength must lie in (0, 1)");
  check(k.transition_bias > 0.0 && k.transition_bias < 1.0, "transition_bias must lie in (0, 1)");
  check(k.transition_persistence > 0.0 && k.transition_persistence < 1.0,
        "transition_persistence must lie in (0, 1)");
  check(k.dirichlet_concentration > 0.0, "dirichlet_c0 must be positive");
  check(k.policy_precision > 0.0 && std::isfinite(k.policy_precision),
        "policy_precision must be positive");
  for (double p : {k.pref_tummy, k.pref_lonely, k.pref_food, k.pref_friend}) {
    check(std::isfinite(p), "preferences must be finite");
  }
  // Builds the arrays to validate overrides and explore_column; every
  // transition entry must be positive so the Dirichlet counts stay positive.
  try {
    const GenerativeModel model = build_generative_model(k);
    for (const auto& b : model.transitions().action) {
      for (double p : b.data()) check(p > 0.0, "transition probabilities must be positive");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(e.what());
  }
}

void validate(const ExperimentConfig& c) {
  validate(c.simulation);
  check(c.runs >= 1, "runs must be at least 1");
  check(c.max_attempt_factor >= 1, "max_attempt_factor must be at least 1");
  check(c.threads >= 1, "threads must be at least 1");
  check(!c.variant.cortisol_modulates_learning || c.variant.learning,
        "cortisol_modulates_learning requires learning");
}

GenerativeModel build_generative_model(const ModelKnobs& k) {
  using S = MotivationState;
  const double s = k.likelihood_strength;
  ObservationModel a;
  a[Modality::Tummy] = likelihood_columns(s, S::Hungry, S::Satisfied);
  a[Modality::Lonely] = likelihood_columns(s, S::Playful, S::Satisfied);
  a[Modality::Food] = likelihood_columns(s, S::Hungry, std::nullopt);
  a[Modality::Friend] = likelihood_columns(s, S::Playful, std::nullopt);

  TransitionModel b;
  b[Action::Eat] = consummatory_transition(k, S::Hungry);
  b[Action::Play] = consummatory_transition(k, S::Playful);
  for (std::size_t from = 0; from < kNumStates; ++from) {
    for (std::size_t to = 0; to < kNumStates; ++to) {
      b[Action::Explore](to, from) = k.explore_column[to];
    }
  }

  for (std::size_t m = 0; m < kNumModalities; ++m) {
    if (k.overrides.likelihood[m]) a.modality[m] = *k.overrides.likelihood[m];
  }
  for (std::size_t u = 0; u < kNumActions; ++u) {
    if (k.overrides.transition[u]) b.action[u] = *k.overrides.transition[u];
  }

  PreferenceModel c;
  c[Modality::Tummy] = {k.pref_tummy, 0.0};
  c[Modality::Lonely] = {k.pref_lonely, 0.0};
  c[Modality::Food] = {0.0, k.pref_food};
  c[Modality::Friend] = {0.0, k.pref_friend};

  std::vector<double> d(kNumStates, 1.0 / kNumStates);
  if (k.overrides.initial_prior) d.assign(k.overrides.initial_prior->begin(), k.overrides.initial_prior->end());

  return GenerativeModel(a, b, c, Categorical(std::move(d)), k.dirichlet_concentration);
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  auto& sim = cfg.simulation;
  auto& k = sim.knobs;
  auto num = [&] { return parse_double(key, value); };

  if (key == "variant") {
    if (value == "custom") return;
    const auto v = ModelVariant::preset(value);
    if (!v) config_error(fmt::format("variant: unknown preset '{}'", value));
    cfg.variant = *v;
  } else if (key == "allostatic_setpoint") {
    cfg.variant.allostatic_setpoint = parse_bool(key, value);
  } else if (key == "learning") {
    cfg.variant.learning = parse_bool(key, value);
  } else if (key == "cortisol_modulates_learning") {
    cfg.variant.cortisol_modulates_learning = parse_bool(key, value);
  } else if (key == "steps") {
    sim.steps = parse_unsigned(key, value);
  } else if (key == "runs") {
    cfg.runs = parse_unsigned(key, value);
  } else if (key == "base_seed" || key == "seed") {
    cfg.base_seed = parse_unsigned(key, value);
  } else if (key == "max_attempt_factor") {
    cfg.max_attempt_factor = parse_unsigned(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_unsigned(key, value);
  } else if (key == "output_dir") {
    cfg.output_dir = std::filesystem::path(std::string(value));
  } else if (key == "resource_probability") {
    sim.resource_probability = num();
  } else if (key == "gamma") {
    sim.gamma = num();
  } else if (key == "lambda") {
    sim.learning_rate = num();
  } else if (key == "initial_energy") {
    sim.initial_energy = num();
  } else if (key == "initial_socialness") {
    sim.initial_socialness = num();
  } else if (key == "set_point") {
    sim.set_point = num();
  } else if (key == "consumption_gain") {
    sim.consumption_gain = num();
  } else if (key == "forced_action") {
    if (value == "none") {
      sim.forced_action.reset();
      return;
    }
    const auto a = parse_action(value);
    if (!a) config_error(fmt::format("forced_action: unknown action '{}'", value));
    sim.forced_action = a;
  } else if (key == "likelihood_strength") {
    k.likelihood_strength = num();
  } else if (key == "transition_bias") {
    k.transition_bias = num();
  } else if (key == "transition_persistence") {
    k.transition_persistence = num();
  } else if (key == "explore_column") {
    const auto v = parse_list(key, value, kNumStates);
    std::copy(v.begin(), v.end(), k.explore_column.begin());
  } else if (key == "pref_tummy") {
    k.pref_tummy = num();
  } else if (key == "pref_lonely") {
    k.pref_lonely = num();
  } else if (key == "pref_food") {
    k.pref_food = num();
  } else if (key == "pref_friend") {
    k.pref_friend = num();
  } else if (key == "dirichlet_c0") {
    k.dirichlet_concentration = num();
  } else if (key == "policy_precision") {
    k.policy_precision = num();
  } else if (key.starts_with("A.")) {
    for (Modality m : kAllModalities) {
      if (key.substr(2) == to_string(m)) {
        k.overrides.likelihood[index(m)] = parse_matrix<kNumOutcomes, kNumStates>(key, value);
        return;
      }
    }
    config_error(fmt::format("unknown modality in '{}'", key));
  } else if (key.starts_with("B.")) {
    const auto a = parse_action(key.substr(2));
    if (!a) config_error(fmt::format("unknown action in '{}'", key));
    k.overrides.transition[index(*a)] = parse_matrix<kNumStates, kNumStates>(key, value);
  } else if (key == "D") {
    const auto v = parse_list(key, value, kNumStates);
    k.overrides.initial_prior = std::array<double, kNumStates>{v[0], v[1], v[2]};
  } else {
    config_error(fmt::format("unknown key '{}'", key));
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      config_error(fmt::format("line {}: expected 'key = value'", line_no));
    }
    apply_setting(cfg, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& cfg) {
  const auto& sim = cfg.simulation;
  const auto& k = sim.knobs;
  const auto& v = cfg.variant;
  fmt::print(out, "# experiment\n");
  fmt::print(out, "variant = {}\n", v.name());
  fmt::print(out, "allostatic_setpoint = {}\n", v.allostatic_setpoint);
  fmt::print(out, "learning = {}\n", v.learning);
  fmt::print(out, "cortisol_modulates_learning = {}\n", v.cortisol_modulates_learning);
  fmt::print(out, "runs = {}\nbase_seed = {}\nmax_attempt_factor = {}\n", cfg.runs, cfg.base_seed,
             cfg.max_attempt_factor);
  fmt::print(out, "\n# simulation\n");
  fmt::print(out, "steps = {}\nresource_probability = {}\ngamma = {}\nlambda = {}\n", sim.steps,
             sim.resource_probability, sim.gamma, sim.learning_rate);
  fmt::print(out, "initial_energy = {}\ninitial_socialness = {}\nset_point = {}\n",
             sim.initial_energy, sim.initial_socialness, sim.set_point);
  fmt::print(out, "consumption_gain = {}\n", sim.consumption_gain);
  if (sim.forced_action) fmt::print(out, "forced_action = {}\n", to_string(*sim.forced_action));
  fmt::print(out, "\n# model knobs\n");
  fmt::print(out, "likelihood_strength = {}\ntransition_bias = {}\ntransition_persistence = {}\n",
             k.likelihood_strength, k.transition_bias, k.transition_persistence);
  fmt::print(out, "explore_column = {}\n", fmt::join(k.explore_column, " "));
  fmt::print(out, "pref_tummy = {}\npref_lonely = {}\npref_food = {}\npref_friend = {}\n",
             k.pref_tummy, k.pref_lonely, k.pref_food, k.pref_friend);
  fmt::print(out, "dirichlet_c0 = {}\npolicy_precision = {}\n", k.dirichlet_concentration,
             k.policy_precision);

  const GenerativeModel model = build_generative_model(k);
  fmt::print(out, "\n# expanded initial arrays, column-major (one column per conditioning state)\n");
  for (Modality m : kAllModalities) {
    fmt::print(out, "A.{} = {}\n", to_string(m), format_matrix(model.likelihood()[m]));
  }
  for (Action a : kAllActions) {
    fmt::print(out, "B.{} = {}\n", to_string(a), format_matrix(model.transitions()[a]));
  }
  fmt::print(out, "D = {}\n", fmt::join(model.initial_prior().probs(), " "));
}

}  // namespace allostasis
