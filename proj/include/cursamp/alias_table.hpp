#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cursamp/errors.hpp"
#include "cursamp/random.hpp"

namespace cursamp {

/// Walker/Vose alias table: O(n) construction, O(1) per draw.
class AliasTable {
public:
  explicit AliasTable(std::span<const double> probabilities) {
    const std::size_t n = probabilities.size();
    detail::require(n > 0, "probabilities: must be nonempty");
    double total = 0.0;
    for (double p : probabilities) {
      detail::require(std::isfinite(p) && p >= 0.0, "probabilities: entries must be finite and >= 0");
      total += p;
    }
    detail::require(total > 0.0, "probabilities: must not all be zero");

    prob_.assign(n, 1.0);
    alias_.resize(n);
    std::vector<double> scaled(n);
    std::vector<std::size_t> small;
    std::vector<std::size_t> large;
    for (std::size_t i = 0; i < n; ++i) {
      alias_[i] = i;
      scaled[i] = probabilities[i] * static_cast<double>(n) / total;
      (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
      const std::size_t s = small.back();
      small.pop_back();
      const std::size_t l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    // Leftovers in either list are full columns up to rounding.
    for (std::size_t i : large) prob_[i] = 1.0;
    for (std::size_t i : small) prob_[i] = 1.0;
  }

  std::size_t size() const noexcept { return prob_.size(); }

  std::size_t sample(Rng& rng) const {
    const std::size_t column =
        std::uniform_int_distribution<std::size_t>(0, prob_.size() - 1)(rng);
    return uniform01(rng) < prob_[column] ? column : alias_[column];
  }

private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

}  // namespace cursamp
