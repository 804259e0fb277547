#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cursamp/errors.hpp"
#include "cursamp/sample_state.hpp"

namespace cursamp {

/// Sampling priority of one sample, `mean(recent losses) + alpha / sqrt(visits)`.
/// Unvisited samples have no finite weight; std::nullopt marks them and
/// rescale_weights() maps them to the cohort maximum.
inline std::optional<double> weight(const SampleState& state, double alpha) {
  if (!state.visited()) {
    return std::nullopt;
  }
  return state.window_mean() + alpha / std::sqrt(static_cast<double>(state.visit_count()));
}

/// Min-max rescaling to [0, 1]. Unvisited entries take the largest finite
/// weight first. A constant cohort (including an all-unvisited one) maps to 0.5.
inline std::vector<double> rescale_weights(std::span<const std::optional<double>> weights) {
  detail::require(!weights.empty(), "weights: must be nonempty");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& w : weights) {
    if (w) {
      detail::require(std::isfinite(*w), "weights: finite entries required");
      lo = std::min(lo, *w);
      hi = std::max(hi, *w);
    }
  }

  std::vector<double> out(weights.size(), 0.5);
  if (!(hi > lo)) {
    return out;
  }
  const double span = hi - lo;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i].value_or(hi);
    out[i] = (w - lo) / span;
  }
  return out;
}

inline std::vector<double> rescale_weights(std::span<const double> weights) {
  std::vector<std::optional<double>> wrapped(weights.begin(), weights.end());
  return rescale_weights(std::span<const std::optional<double>>(wrapped));
}

/// Softmax of rescaled weights mixed with a uniform floor:
/// pi_i = (1 - epsilon) * exp(w_i) / sum_j exp(w_j) + epsilon / n.
inline std::vector<double> distribution(std::span<const double> rescaled, double epsilon) {
  detail::require(!rescaled.empty(), "weights: must be nonempty");
  detail::require(std::isfinite(epsilon) && epsilon >= 0.0 && epsilon <= 1.0,
                  "epsilon: must be in [0, 1]");
  for (double w : rescaled) {
    detail::require(w >= 0.0 && w <= 1.0, "weights: rescaled weights must lie in [0, 1]");
  }

  const double n = static_cast<double>(rescaled.size());
  if (std::all_of(rescaled.begin(), rescaled.end(), [&](double w) { return w == rescaled[0]; })) {
    return std::vector<double>(rescaled.size(), 1.0 / n);
  }
  std::vector<double> pi(rescaled.size());
  double total = 0.0;
  for (std::size_t i = 0; i < rescaled.size(); ++i) {
    pi[i] = std::exp(rescaled[i]);
    total += pi[i];
  }
  const double floor = epsilon / n;
  const double scale = (1.0 - epsilon) / total;
  for (double& p : pi) {
    p = scale * p + floor;
  }
  return pi;
}

/// Weights of a whole cohort, in id order.
inline std::vector<std::optional<double>> cohort_weights(std::span<const SampleState> states,
                                                         double alpha) {
  std::vector<std::optional<double>> out;
  out.reserve(states.size());
  for (const auto& s : states) {
    out.push_back(weight(s, alpha));
  }
  return out;
}

}  // namespace cursamp
