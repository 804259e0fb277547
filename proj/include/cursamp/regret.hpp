#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>

#include "cursamp/bandit_policy.hpp"
#include "cursamp/errors.hpp"

namespace cursamp {

namespace detail {

inline void check_means(std::span<const double> means) {
  require(!means.empty(), "means: at least one arm required");
  for (double m : means) {
    require(std::isfinite(m) && m >= 0.0 && m <= 1.0, "means: every mean must be in [0, 1]");
  }
}

}  // namespace detail

/// UCB1 upper bound on expected regret after n plays:
///   8 * sum_{i: mu_i < mu*} ln(n) / delta_i + (1 + pi^2 / 3) * sum_j delta_j,
/// with delta_i = mu* - mu_i.
inline double theorem1_bound(std::span<const double> means, std::uint64_t n) {
  detail::check_means(means);
  detail::require(n >= 1, "n: must be >= 1");
  const double best = *std::max_element(means.begin(), means.end());
  const double log_n = std::log(static_cast<double>(n));
  double inverse_gaps = 0.0;
  double gaps = 0.0;
  for (double m : means) {
    const double delta = best - m;
    if (delta > 0.0) {
      inverse_gaps += log_n / delta;
      gaps += delta;
    }
  }
  return 8.0 * inverse_gaps + (1.0 + std::numbers::pi * std::numbers::pi / 3.0) * gaps;
}

/// Sum over pulls of (max mu - mu of the pulled arm).
inline double empirical_regret(const PolicyTrace& trace, std::span<const double> means) {
  detail::check_means(means);
  const double best = *std::max_element(means.begin(), means.end());
  double total = 0.0;
  for (const auto& p : trace.pulls) {
    if (p.arm >= means.size()) {
      throw ValidationError("trace: arm index " + std::to_string(p.arm) + " out of range");
    }
    total += best - means[p.arm];
  }
  return total;
}

}  // namespace cursamp
