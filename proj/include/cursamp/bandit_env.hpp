#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cursamp/errors.hpp"
#include "cursamp/random.hpp"

namespace cursamp {

struct BernoulliArm {
  double mean = 0.5;
};

/// Beta(a, b) mapped affinely onto [lo, hi] within [0, 1].
struct ScaledBetaArm {
  double a = 1.0;
  double b = 1.0;
  double lo = 0.0;
  double hi = 1.0;
};

using ArmDistribution = std::variant<BernoulliArm, ScaledBetaArm>;

inline double arm_mean(const ArmDistribution& arm) {
  if (const auto* b = std::get_if<BernoulliArm>(&arm)) return b->mean;
  const auto& s = std::get<ScaledBetaArm>(arm);
  return s.lo + (s.hi - s.lo) * s.a / (s.a + s.b);
}

inline void validate_arm(const ArmDistribution& arm) {
  auto unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (const auto* b = std::get_if<BernoulliArm>(&arm)) {
    detail::require(unit(b->mean), "arms: Bernoulli mean must be in [0, 1]");
    return;
  }
  const auto& s = std::get<ScaledBetaArm>(arm);
  detail::require(s.a > 0.0 && s.b > 0.0, "arms: Beta shape parameters must be > 0");
  detail::require(unit(s.lo) && unit(s.hi) && s.lo <= s.hi, "arms: Beta support must lie in [0, 1]");
}

inline double draw_reward(const ArmDistribution& arm, Rng& rng) {
  if (const auto* b = std::get_if<BernoulliArm>(&arm)) {
    return uniform01(rng) < b->mean ? 1.0 : 0.0;
  }
  const auto& s = std::get<ScaledBetaArm>(arm);
  const double x = std::gamma_distribution<double>(s.a, 1.0)(rng);
  const double y = std::gamma_distribution<double>(s.b, 1.0)(rng);
  return s.lo + (s.hi - s.lo) * (x / (x + y));
}

/// Replaces the whole arm set from `start_step` (1-based) onward.
struct ArmPhase {
  std::uint64_t start_step = 1;
  std::vector<ArmDistribution> arms;
};

/// K-armed bandit. Steps are 1-based. Two optional sources of
/// non-stationarity:
///   * phases: abrupt replacement of the arm distributions at given steps;
///   * decline ratios d_1, d_2, ...: the reward at step t is the base draw
///     times prod_{j=1}^{t-1} d_j. Ratios past the explicit list use
///     `decline_tail`.
class BanditEnv {
public:
  explicit BanditEnv(std::vector<ArmDistribution> arms) {
    detail::require(!arms.empty(), "arms: at least one arm required");
    for (const auto& a : arms) validate_arm(a);
    phases_.push_back({1, std::move(arms)});
  }

  static BanditEnv bernoulli(const std::vector<double>& means) {
    std::vector<ArmDistribution> arms;
    for (double m : means) arms.emplace_back(BernoulliArm{m});
    return BanditEnv(std::move(arms));
  }

  BanditEnv& add_phase(std::uint64_t start_step, std::vector<ArmDistribution> arms) {
    detail::require(start_step > phases_.back().start_step,
                    "phases: start steps must be strictly increasing");
    detail::require(arms.size() == arm_count(), "phases: every phase needs the same arm count");
    for (const auto& a : arms) validate_arm(a);
    phases_.push_back({start_step, std::move(arms)});
    return *this;
  }

  BanditEnv& set_decline(std::vector<double> ratios, double tail = 1.0) {
    for (double d : ratios) detail::require(std::isfinite(d) && d > 0.0, "decline_ratios: must be > 0");
    detail::require(std::isfinite(tail) && tail > 0.0, "decline_tail: must be > 0");
    prefix_.assign(1, 1.0);
    for (double d : ratios) prefix_.push_back(prefix_.back() * d);
    tail_ = tail;
    return *this;
  }

  std::size_t arm_count() const noexcept { return phases_.front().arms.size(); }
  bool stationary() const noexcept { return phases_.size() == 1 && prefix_.size() == 1 && tail_ == 1.0; }

  const std::vector<ArmDistribution>& arms_at(std::uint64_t step) const {
    auto it = std::upper_bound(phases_.begin(), phases_.end(), step,
                               [](std::uint64_t s, const ArmPhase& p) { return s < p.start_step; });
    return std::prev(it)->arms;
  }

  /// prod_{j=1}^{step-1} d_j
  double decay_at(std::uint64_t step) const {
    const std::uint64_t n = step == 0 ? 0 : step - 1;
    const std::uint64_t explicit_n = std::min<std::uint64_t>(n, prefix_.size() - 1);
    double f = prefix_[explicit_n];
    if (n > explicit_n) f *= std::pow(tail_, static_cast<double>(n - explicit_n));
    return f;
  }

  double expected_reward(std::size_t arm, std::uint64_t step) const {
    return arm_mean(arms_at(step).at(arm)) * decay_at(step);
  }

  double best_expected(std::uint64_t step) const {
    double best = 0.0;
    for (const auto& a : arms_at(step)) best = std::max(best, arm_mean(a));
    return best * decay_at(step);
  }

  double pull(std::size_t arm, std::uint64_t step, Rng& rng) const {
    return draw_reward(arms_at(step).at(arm), rng) * decay_at(step);
  }

  /// Means of the initial phase.
  std::vector<double> means() const {
    std::vector<double> out;
    for (const auto& a : phases_.front().arms) out.push_back(arm_mean(a));
    return out;
  }

private:
  std::vector<ArmPhase> phases_;
  std::vector<double> prefix_{1.0};
  double tail_ = 1.0;
};

}  // namespace cursamp
