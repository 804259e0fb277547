#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cursamp/anchor_schedule.hpp"
#include "cursamp/errors.hpp"
#include "cursamp/random.hpp"

namespace cursamp {

using AnchorId = std::size_t;

/// Anchors of one batch. Confidences are the model's probability of each
/// negative anchor's true (negative) class, so low confidence means hard.
struct AnchorBatch {
  std::vector<AnchorId> positive_ids;
  std::vector<AnchorId> negative_ids;
  std::vector<double> negative_confidences;  // parallel to negative_ids

  void validate() const {
    detail::require(negative_ids.size() == negative_confidences.size(),
                    "negative_confidences: one entry per negative id required");
    for (double c : negative_confidences) {
      detail::require(std::isfinite(c) && c >= 0.0 && c <= 1.0,
                      "negative_confidences: must lie in [0, 1]");
    }
  }

  /// Batch whose negative ids follow the positives: positives are 0..p-1,
  /// negatives p..p+m-1.
  static AnchorBatch with_sequential_ids(std::size_t n_positive, std::vector<double> confidences) {
    AnchorBatch b;
    b.positive_ids.resize(n_positive);
    std::iota(b.positive_ids.begin(), b.positive_ids.end(), AnchorId{0});
    b.negative_ids.resize(confidences.size());
    std::iota(b.negative_ids.begin(), b.negative_ids.end(), AnchorId{n_positive});
    b.negative_confidences = std::move(confidences);
    return b;
  }
};

/// Negatives whose confidence lies in [window.xi, window.eta], returned as
/// positions into the batch's negative list (ascending).
///
/// With max_ratio set, at most floor(max_ratio * |positives|) are kept: a
/// larger qualifying set is subsampled uniformly without replacement. If no
/// negative qualifies, the k lowest-confidence negatives are returned instead,
/// where k is that cap, or |positives| (at least 1) when uncapped.
inline std::vector<std::size_t> select_negatives(const AnchorBatch& batch, ConfidenceWindow window,
                                                 std::optional<double> max_ratio, Rng& rng) {
  batch.validate();
  detail::require(window.xi <= window.eta, "window: xi must be <= eta");
  if (max_ratio) {
    detail::require(std::isfinite(*max_ratio) && *max_ratio > 0.0, "max_ratio: must be > 0");
  }
  const auto& conf = batch.negative_confidences;
  if (conf.empty()) {
    return {};
  }

  std::optional<std::size_t> cap;
  if (max_ratio) {
    cap = static_cast<std::size_t>(
        std::floor(*max_ratio * static_cast<double>(batch.positive_ids.size())));
  }

  std::vector<std::size_t> in_window;
  for (std::size_t i = 0; i < conf.size(); ++i) {
    if (conf[i] >= window.xi && conf[i] <= window.eta) {
      in_window.push_back(i);
    }
  }

  if (in_window.empty()) {
    const std::size_t k = std::min(
        conf.size(), cap.value_or(std::max<std::size_t>(1, batch.positive_ids.size())));
    std::vector<std::size_t> order(conf.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return conf[a] < conf[b]; });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
  }

  if (cap && in_window.size() > *cap) {
    // Partial Fisher-Yates: the first *cap slots become a uniform subset.
    for (std::size_t i = 0; i < *cap; ++i) {
      const std::size_t j =
          std::uniform_int_distribution<std::size_t>(i, in_window.size() - 1)(rng);
      std::swap(in_window[i], in_window[j]);
    }
    in_window.resize(*cap);
    std::sort(in_window.begin(), in_window.end());
  }
  return in_window;
}

/// All positives followed by the selected negatives; positives are never filtered.
inline std::vector<AnchorId> assemble_training_anchors(const AnchorBatch& batch,
                                                       std::span<const std::size_t> selected) {
  batch.validate();
  std::vector<AnchorId> anchors = batch.positive_ids;
  std::set<AnchorId> seen(anchors.begin(), anchors.end());
  detail::require(seen.size() == anchors.size(), "positive_ids: duplicate anchor id");
  for (std::size_t pos : selected) {
    detail::require(pos < batch.negative_ids.size(),
                    "selected_negatives: position " + std::to_string(pos) + " out of range");
    const AnchorId id = batch.negative_ids[pos];
    detail::require(seen.insert(id).second,
                    "selected_negatives: anchor id " + std::to_string(id) +
                        " duplicates another anchor");
    anchors.push_back(id);
  }
  return anchors;
}

/// Mean confidence of the selected negatives; 0 when nothing was selected.
inline double mean_confidence(const AnchorBatch& batch, std::span<const std::size_t> selected) {
  if (selected.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t pos : selected) total += batch.negative_confidences.at(pos);
  return total / static_cast<double>(selected.size());
}

}  // namespace cursamp
