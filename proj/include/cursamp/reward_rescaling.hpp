#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "cursamp/bandit_policy.hpp"
#include "cursamp/errors.hpp"

namespace cursamp {

namespace detail {

/// prefix[t-1] = prod_{j=1}^{t-1} d_j for t = 1..length.
inline std::vector<double> cumulative_decline(std::span<const double> ratios, std::size_t length) {
  require(length == 0 || ratios.size() + 1 >= length,
          "decline_ratios: need d_1..d_{T-1} for sequences of length T");
  for (double d : ratios) require(std::isfinite(d) && d > 0.0, "decline_ratios: must be > 0");
  std::vector<double> prefix(length, 1.0);
  for (std::size_t t = 1; t < length; ++t) prefix[t] = prefix[t - 1] * ratios[t - 1];
  return prefix;
}

}  // namespace detail

/// Undoes a multiplicative reward decline: r_hat_t = r_t / prod_{j=1}^{t-1} d_j.
/// Each inner vector is one reward sequence indexed by step t = 1..T.
inline std::vector<std::vector<double>> rescale_rewards(
    std::span<const std::vector<double>> sequences, std::span<const double> decline_ratios) {
  std::size_t longest = 0;
  for (const auto& s : sequences) longest = std::max(longest, s.size());
  const auto prefix = detail::cumulative_decline(decline_ratios, longest);
  std::vector<std::vector<double>> out;
  out.reserve(sequences.size());
  for (const auto& s : sequences) {
    auto& r = out.emplace_back(s.size());
    for (std::size_t t = 0; t < s.size(); ++t) r[t] = s[t] / prefix[t];
  }
  return out;
}

/// Rescaled reward of every pull in a trace, in pull order.
inline std::vector<double> rescale_rewards(const PolicyTrace& trace,
                                           std::span<const double> decline_ratios) {
  std::uint64_t last = 0;
  for (const auto& p : trace.pulls) last = std::max(last, p.step);
  const auto prefix = detail::cumulative_decline(decline_ratios, last);
  std::vector<double> out;
  out.reserve(trace.pulls.size());
  for (const auto& p : trace.pulls) out.push_back(p.reward / prefix[p.step - 1]);
  return out;
}

}  // namespace cursamp
