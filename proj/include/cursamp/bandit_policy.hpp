#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cursamp/alias_table.hpp"
#include "cursamp/bandit_env.hpp"
#include "cursamp/errors.hpp"
#include "cursamp/random.hpp"
#include "cursamp/sample_state.hpp"
#include "cursamp/weights.hpp"

namespace cursamp {

enum class PolicyKind { ucb1_greedy, curriculum_softmax, uniform, greedy_loss };

inline std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::ucb1_greedy: return "ucb1_greedy";
    case PolicyKind::curriculum_softmax: return "curriculum_softmax";
    case PolicyKind::uniform: return "uniform";
    case PolicyKind::greedy_loss: return "greedy_loss";
  }
  return "?";
}

inline PolicyKind parse_policy(std::string_view name) {
  for (auto k : {PolicyKind::ucb1_greedy, PolicyKind::curriculum_softmax, PolicyKind::uniform,
                 PolicyKind::greedy_loss}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("policy: unknown policy '" + std::string(name) + "'");
}

/// Exploration bonus used by ucb1_greedy: classical sqrt(2 ln t / N) or
/// alpha / sqrt(N) as in the curriculum weight.
enum class BonusForm { classical, curriculum };

/// What curriculum_softmax feeds into the loss slot of the weight.
enum class RewardMapping { reward, one_minus_reward };

struct PolicyOptions {
  BonusForm ucb_bonus = BonusForm::classical;
  double alpha = 2.0;
  double epsilon = 0.2;
  std::size_t window_c = 5;
  RewardMapping reward_mapping = RewardMapping::reward;
};

struct Pull {
  std::uint64_t step = 0;  // 1-based
  std::size_t arm = 0;
  double reward = 0.0;
};

/// Pull history with running expected regret against the per-step best arm.
struct PolicyTrace {
  std::vector<Pull> pulls;
  std::vector<double> cumulative_regret;  // after each pull

  double regret() const { return cumulative_regret.empty() ? 0.0 : cumulative_regret.back(); }

  /// Regret after the first n pulls.
  double regret_at(std::size_t n) const {
    detail::require(n <= cumulative_regret.size(), "horizon: beyond trace length");
    return n == 0 ? 0.0 : cumulative_regret[n - 1];
  }

  std::vector<std::uint64_t> pull_counts(std::size_t arms) const {
    std::vector<std::uint64_t> counts(arms, 0);
    for (const auto& p : pulls) ++counts.at(p.arm);
    return counts;
  }
};

namespace detail {

inline std::size_t argmax_first(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace detail

/// Runs `policy` for `horizon` pulls. Every policy first pulls each arm once
/// in index order. Deterministic given the engine state.
inline PolicyTrace run_policy(const BanditEnv& env, PolicyKind policy, std::uint64_t horizon,
                              Rng& rng, const PolicyOptions& opts = {}) {
  const std::size_t k = env.arm_count();
  detail::require(horizon >= k, "horizon: must be >= number of arms (" + std::to_string(k) + ")");
  detail::require(opts.alpha >= 0.0, "alpha: must be >= 0");
  detail::require(opts.epsilon >= 0.0 && opts.epsilon <= 1.0, "epsilon: must be in [0, 1]");

  PolicyTrace trace;
  trace.pulls.reserve(horizon);
  trace.cumulative_regret.reserve(horizon);

  std::vector<std::uint64_t> counts(k, 0);
  std::vector<double> sums(k, 0.0);
  std::vector<SampleState> windows;
  for (std::size_t i = 0; i < k; ++i) windows.emplace_back(i, opts.window_c);
  std::vector<double> scores(k);
  double regret = 0.0;

  for (std::uint64_t t = 1; t <= horizon; ++t) {
    std::size_t arm = 0;
    if (t <= k) {
      arm = static_cast<std::size_t>(t - 1);
    } else {
      switch (policy) {
        case PolicyKind::uniform:
          arm = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
          break;
        case PolicyKind::greedy_loss:
          for (std::size_t i = 0; i < k; ++i) scores[i] = sums[i] / static_cast<double>(counts[i]);
          arm = detail::argmax_first(scores);
          break;
        case PolicyKind::ucb1_greedy: {
          const double plays = static_cast<double>(t - 1);
          for (std::size_t i = 0; i < k; ++i) {
            const double n = static_cast<double>(counts[i]);
            const double bonus = opts.ucb_bonus == BonusForm::classical
                                     ? std::sqrt(2.0 * std::log(plays) / n)
                                     : opts.alpha / std::sqrt(n);
            scores[i] = sums[i] / n + bonus;
          }
          arm = detail::argmax_first(scores);
          break;
        }
        case PolicyKind::curriculum_softmax: {
          const auto w = cohort_weights(windows, opts.alpha);
          const auto rescaled = rescale_weights(std::span<const std::optional<double>>(w));
          const auto pi = distribution(rescaled, opts.epsilon);
          arm = AliasTable(pi).sample(rng);
          break;
        }
      }
    }

    const double r = env.pull(arm, t, rng);
    ++counts[arm];
    sums[arm] += r;
    windows[arm].record(opts.reward_mapping == RewardMapping::reward ? r : std::max(0.0, 1.0 - r));
    regret += env.best_expected(t) - env.expected_reward(arm, t);
    trace.pulls.push_back({t, arm, r});
    trace.cumulative_regret.push_back(regret);
  }
  return trace;
}

}  // namespace cursamp
