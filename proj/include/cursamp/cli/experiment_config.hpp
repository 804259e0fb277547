#pragma once

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toml.hpp"

#include "cursamp/anchor_schedule.hpp"
#include "cursamp/bandit_policy.hpp"
#include "cursamp/curriculum_config.hpp"
#include "cursamp/curriculum_experiment.hpp"
#include "cursamp/errors.hpp"
#include "cursamp/synthetic_task.hpp"

namespace cursamp::cli {

enum class ExperimentKind { bandit, curriculum, anchors, lemma1, checkpoint };

inline std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::bandit: return "bandit";
    case ExperimentKind::curriculum: return "curriculum";
    case ExperimentKind::anchors: return "anchors";
    case ExperimentKind::lemma1: return "lemma1";
    case ExperimentKind::checkpoint: return "checkpoint";
  }
  return "?";
}

struct TaskSection {
  TaskParams params;
  std::size_t max_epochs = 3000;
  double target = 0.05;
  std::vector<Strategy> strategies{Strategy::curriculum, Strategy::uniform};
  bool stop_at_target = false;
};

struct BanditSection {
  std::vector<double> means{0.9, 0.6};
  std::vector<std::uint64_t> horizons{1000, 10000, 100000};
  std::vector<PolicyKind> policies{PolicyKind::ucb1_greedy};
  PolicyOptions options;
  /// Abrupt non-stationary variant: arm means rotate every swap_every steps.
  std::optional<std::uint64_t> swap_every;
};

struct AnchorSection {
  AnchorSchedule schedule{0.5, 1.0, 0.3, 100, StepClock::epoch};
  std::optional<double> max_ratio = 3.0;  // nullopt = uncapped
  std::size_t n_positives = 2;
  std::size_t n_negatives = 10000;
  double confidence_beta_a = 1.0;  // negative confidences ~ Beta(a, b)
  double confidence_beta_b = 1.0;
  std::size_t repeats = 1;
};

struct Lemma1Section {
  double gamma = 0.95;
  std::uint64_t horizon = 100;
  std::size_t sequences = 1000;
  std::uint64_t early_first = 1, early_last = 10;
  std::uint64_t late_first = 91, late_last = 100;
  double significance = 0.01;
};

struct CheckpointSection {
  std::size_t epochs = 5;
};

/// Acceptance thresholds evaluated under --check; absent ones are skipped.
struct ChecksSection {
  std::optional<double> max_speedup_ratio;
  std::optional<std::size_t> min_forgetting_wins;
  std::optional<double> min_nonstationary_ratio;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::curriculum;
  std::string name;
  std::vector<std::uint64_t> seeds{0};
  std::filesystem::path out_dir = "results";
  std::size_t workers = 0;  // 0 = hardware concurrency

  CurriculumConfig curriculum;
  TaskSection task;
  BanditSection bandit;
  AnchorSection anchors;
  Lemma1Section lemma1;
  CheckpointSection checkpoint;
  ChecksSection checks;
};

namespace detail {

using cursamp::ValidationError;

inline std::string path_of(std::string_view section, std::string_view key) {
  return std::string(section) + "." + std::string(key);
}

inline const toml::node* find(const toml::table& root, std::string_view section,
                              std::string_view key) {
  const auto* sec = root.get(section);
  if (!sec) return nullptr;
  const auto* tbl = sec->as_table();
  if (!tbl) throw ValidationError(std::string(section) + ": expected a table");
  return tbl->get(key);
}

inline double number(const toml::node& n, const std::string& path) {
  if (auto v = n.value<double>()) return *v;
  throw ValidationError(path + ": expected a number");
}

inline std::int64_t integer(const toml::node& n, const std::string& path) {
  if (auto v = n.value_exact<std::int64_t>()) return *v;
  throw ValidationError(path + ": expected an integer");
}

inline void read(const toml::table& root, std::string_view sec, std::string_view key, double& out) {
  if (const auto* n = find(root, sec, key)) out = number(*n, path_of(sec, key));
}

template <std::unsigned_integral U>
void read(const toml::table& root, std::string_view sec, std::string_view key, U& out) {
  if (const auto* n = find(root, sec, key)) {
    const auto v = integer(*n, path_of(sec, key));
    if (v < 0) throw ValidationError(path_of(sec, key) + ": must be >= 0");
    out = static_cast<U>(v);
  }
}

inline void read(const toml::table& root, std::string_view sec, std::string_view key, bool& out) {
  if (const auto* n = find(root, sec, key)) {
    if (auto v = n->value<bool>()) {
      out = *v;
    } else {
      throw ValidationError(path_of(sec, key) + ": expected a boolean");
    }
  }
}

inline std::optional<std::string> read_string(const toml::table& root, std::string_view sec,
                                              std::string_view key) {
  if (const auto* n = find(root, sec, key)) {
    if (auto v = n->value<std::string>()) return *v;
    throw ValidationError(path_of(sec, key) + ": expected a string");
  }
  return std::nullopt;
}

template <class T, class Conv>
std::optional<std::vector<T>> read_array(const toml::table& root, std::string_view sec,
                                         std::string_view key, Conv conv) {
  const auto* n = find(root, sec, key);
  if (!n) return std::nullopt;
  const auto* arr = n->as_array();
  if (!arr) throw ValidationError(path_of(sec, key) + ": expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    out.push_back(conv(*arr->get(i), path_of(sec, key) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

/// Re-throws a library validation error with the config field path prefixed.
template <class Fn>
void validate_section(std::string_view section, Fn fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(section) + "." + e.what());
  }
}

}  // namespace detail

inline ExperimentConfig parse_config(const toml::table& root) {
  using namespace detail;
  ExperimentConfig cfg;

  const auto kind = read_string(root, "experiment", "kind");
  if (!kind) throw ValidationError("experiment.kind: required");
  bool known = false;
  for (auto k : {ExperimentKind::bandit, ExperimentKind::curriculum, ExperimentKind::anchors,
                 ExperimentKind::lemma1, ExperimentKind::checkpoint}) {
    if (to_string(k) == *kind) {
      cfg.kind = k;
      known = true;
    }
  }
  if (!known) throw ValidationError("experiment.kind: unknown kind '" + *kind + "'");
  cfg.name = read_string(root, "experiment", "name").value_or(std::string(to_string(cfg.kind)));
  if (auto out = read_string(root, "experiment", "out_dir")) cfg.out_dir = *out;
  read(root, "experiment", "workers", cfg.workers);
  if (auto seeds = read_array<std::uint64_t>(root, "experiment", "seeds",
                                             [](const toml::node& n, const std::string& p) {
                                               const auto v = integer(n, p);
                                               if (v < 0) throw ValidationError(p + ": must be >= 0");
                                               return static_cast<std::uint64_t>(v);
                                             })) {
    cfg.seeds = *seeds;
  }
  if (const auto* n = find(root, "experiment", "seed_count")) {
    const auto count = integer(*n, "experiment.seed_count");
    if (count < 1) throw ValidationError("experiment.seed_count: must be >= 1");
    cfg.seeds.clear();
    for (std::int64_t s = 0; s < count; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  if (cfg.seeds.empty()) throw ValidationError("experiment.seeds: must be nonempty");

  // [task]
  auto& t = cfg.task;
  read(root, "task", "n_samples", t.params.n_samples);
  read(root, "task", "initial_loss_min", t.params.initial_loss_min);
  read(root, "task", "initial_loss_max", t.params.initial_loss_max);
  read(root, "task", "decay_min", t.params.decay_min);
  read(root, "task", "decay_max", t.params.decay_max);
  read(root, "task", "noise_sigma", t.params.noise_sigma);
  read(root, "task", "forgetting_rate", t.params.forgetting_rate);
  read(root, "task", "max_epochs", t.max_epochs);
  read(root, "task", "target", t.target);
  read(root, "task", "stop_at_target", t.stop_at_target);
  if (auto s = read_array<Strategy>(root, "task", "strategies",
                                    [](const toml::node& n, const std::string& p) {
                                      auto v = n.value<std::string>();
                                      if (!v) throw ValidationError(p + ": expected a string");
                                      try {
                                        return parse_strategy(*v);
                                      } catch (const ValidationError&) {
                                        throw ValidationError(p + ": unknown strategy '" + *v + "'");
                                      }
                                    })) {
    t.strategies = *s;
  }
  validate_section("task", [&] { t.params.validate(); });
  if (t.max_epochs < 1) throw ValidationError("task.max_epochs: must be >= 1");
  if (!(t.target > 0.0)) throw ValidationError("task.target: must be > 0");
  if (t.strategies.empty()) throw ValidationError("task.strategies: must be nonempty");

  // [curriculum]
  cfg.curriculum = CurriculumConfig::for_dataset(t.params.n_samples);
  read(root, "curriculum", "alpha", cfg.curriculum.alpha);
  read(root, "curriculum", "epsilon", cfg.curriculum.epsilon);
  read(root, "curriculum", "window_c", cfg.curriculum.window_c);
  read(root, "curriculum", "n_epoch", cfg.curriculum.n_epoch);
  read(root, "curriculum", "batch_size", cfg.curriculum.batch_size);
  validate_section("curriculum", [&] { cfg.curriculum.validate(); });

  // [bandit]
  auto& b = cfg.bandit;
  if (auto m = read_array<double>(root, "bandit", "means", number)) b.means = *m;
  if (auto h = read_array<std::uint64_t>(root, "bandit", "horizons",
                                         [](const toml::node& n, const std::string& p) {
                                           const auto v = integer(n, p);
                                           if (v < 1) throw ValidationError(p + ": must be >= 1");
                                           return static_cast<std::uint64_t>(v);
                                         })) {
    b.horizons = *h;
  }
  if (auto ps = read_array<PolicyKind>(root, "bandit", "policies",
                                       [](const toml::node& n, const std::string& p) {
                                         auto v = n.value<std::string>();
                                         if (!v) throw ValidationError(p + ": expected a string");
                                         try {
                                           return parse_policy(*v);
                                         } catch (const ValidationError&) {
                                           throw ValidationError(p + ": unknown policy '" + *v + "'");
                                         }
                                       })) {
    b.policies = *ps;
  }
  if (auto bonus = read_string(root, "bandit", "ucb_bonus")) {
    if (*bonus == "classical") {
      b.options.ucb_bonus = BonusForm::classical;
    } else if (*bonus == "curriculum") {
      b.options.ucb_bonus = BonusForm::curriculum;
    } else {
      throw ValidationError("bandit.ucb_bonus: expected 'classical' or 'curriculum'");
    }
  }
  if (auto mapping = read_string(root, "bandit", "reward_mapping")) {
    if (*mapping == "reward") {
      b.options.reward_mapping = RewardMapping::reward;
    } else if (*mapping == "one_minus_reward") {
      b.options.reward_mapping = RewardMapping::one_minus_reward;
    } else {
      throw ValidationError("bandit.reward_mapping: expected 'reward' or 'one_minus_reward'");
    }
  }
  b.options.alpha = cfg.curriculum.alpha;
  b.options.epsilon = cfg.curriculum.epsilon;
  b.options.window_c = cfg.curriculum.window_c;
  if (find(root, "bandit", "swap_every")) {
    std::uint64_t swap = 0;
    read(root, "bandit", "swap_every", swap);
    if (swap < 1) throw ValidationError("bandit.swap_every: must be >= 1");
    b.swap_every = swap;
  }
  if (b.means.empty()) throw ValidationError("bandit.means: must be nonempty");
  for (std::size_t i = 0; i < b.means.size(); ++i) {
    if (!(b.means[i] >= 0.0 && b.means[i] <= 1.0)) {
      throw ValidationError("bandit.means[" + std::to_string(i) + "]: must be in [0, 1]");
    }
  }
  if (b.horizons.empty()) throw ValidationError("bandit.horizons: must be nonempty");
  for (auto h : b.horizons) {
    if (h < b.means.size()) throw ValidationError("bandit.horizons: every horizon must be >= number of arms");
  }

  // [anchors]
  auto& a = cfg.anchors;
  read(root, "anchors", "xi_start", a.schedule.xi_start);
  read(root, "anchors", "eta_start", a.schedule.eta_start);
  read(root, "anchors", "eta_end", a.schedule.eta_end);
  read(root, "anchors", "total_steps", a.schedule.total_steps);
  if (auto clock = read_string(root, "anchors", "clock")) {
    if (*clock == "epoch") {
      a.schedule.clock = StepClock::epoch;
    } else if (*clock == "iteration") {
      a.schedule.clock = StepClock::iteration;
    } else {
      throw ValidationError("anchors.clock: expected 'epoch' or 'iteration'");
    }
  }
  if (find(root, "anchors", "max_ratio")) {
    double ratio = 0.0;
    read(root, "anchors", "max_ratio", ratio);
    if (ratio < 0.0) throw ValidationError("anchors.max_ratio: must be >= 0 (0 = uncapped)");
    a.max_ratio = ratio == 0.0 ? std::nullopt : std::optional<double>(ratio);
  }
  read(root, "anchors", "n_positives", a.n_positives);
  read(root, "anchors", "n_negatives", a.n_negatives);
  read(root, "anchors", "confidence_beta_a", a.confidence_beta_a);
  read(root, "anchors", "confidence_beta_b", a.confidence_beta_b);
  read(root, "anchors", "repeats", a.repeats);
  validate_section("anchors", [&] { a.schedule.validate(); });
  if (!(a.confidence_beta_a > 0.0 && a.confidence_beta_b > 0.0)) {
    throw ValidationError("anchors.confidence_beta_a: Beta parameters must be > 0");
  }
  if (a.repeats < 1) throw ValidationError("anchors.repeats: must be >= 1");

  // [lemma1]
  auto& l = cfg.lemma1;
  read(root, "lemma1", "gamma", l.gamma);
  read(root, "lemma1", "horizon", l.horizon);
  read(root, "lemma1", "sequences", l.sequences);
  read(root, "lemma1", "early_first", l.early_first);
  read(root, "lemma1", "early_last", l.early_last);
  read(root, "lemma1", "late_first", l.late_first);
  read(root, "lemma1", "late_last", l.late_last);
  read(root, "lemma1", "significance", l.significance);
  if (!(l.gamma > 0.0)) throw ValidationError("lemma1.gamma: must be > 0");
  if (l.horizon < 2) throw ValidationError("lemma1.horizon: must be >= 2");
  if (l.sequences < 1) throw ValidationError("lemma1.sequences: must be >= 1");
  if (!(1 <= l.early_first && l.early_first <= l.early_last && l.early_last <= l.horizon)) {
    throw ValidationError("lemma1.early_first: stratum must satisfy 1 <= first <= last <= horizon");
  }
  if (!(1 <= l.late_first && l.late_first <= l.late_last && l.late_last <= l.horizon)) {
    throw ValidationError("lemma1.late_first: stratum must satisfy 1 <= first <= last <= horizon");
  }
  if (!(l.significance > 0.0 && l.significance < 1.0)) {
    throw ValidationError("lemma1.significance: must be in (0, 1)");
  }

  read(root, "checkpoint", "epochs", cfg.checkpoint.epochs);
  if (cfg.checkpoint.epochs < 1) throw ValidationError("checkpoint.epochs: must be >= 1");

  // [checks]
  if (find(root, "checks", "max_speedup_ratio")) {
    double v = 0.0;
    read(root, "checks", "max_speedup_ratio", v);
    cfg.checks.max_speedup_ratio = v;
  }
  if (find(root, "checks", "min_forgetting_wins")) {
    std::size_t v = 0;
    read(root, "checks", "min_forgetting_wins", v);
    cfg.checks.min_forgetting_wins = v;
  }
  if (find(root, "checks", "min_nonstationary_ratio")) {
    double v = 0.0;
    read(root, "checks", "min_nonstationary_ratio", v);
    cfg.checks.min_nonstationary_ratio = v;
  }
  return cfg;
}

inline ExperimentConfig parse_config_text(std::string_view text, std::string_view source = "config") {
  try {
    return parse_config(toml::parse(text, source));
  } catch (const toml::parse_error& e) {
    throw ValidationError(std::string(source) + ": TOML syntax error: " + std::string(e.description()));
  }
}

}  // namespace cursamp::cli
