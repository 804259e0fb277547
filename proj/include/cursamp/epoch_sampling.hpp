#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cursamp/alias_table.hpp"
#include "cursamp/errors.hpp"
#include "cursamp/random.hpp"
#include "cursamp/sample_state.hpp"

namespace cursamp {

using Batch = std::vector<SampleId>;

/// Draws n_epoch ids i.i.d. with replacement from `distribution`.
inline std::vector<SampleId> sample_epoch(std::span<const double> distribution,
                                          std::size_t n_epoch, Rng& rng) {
  detail::require(n_epoch >= 1, "n_epoch: must be >= 1");
  double total = 0.0;
  for (double p : distribution) total += p;
  detail::require(std::abs(total - 1.0) <= 1e-9, "distribution: must sum to 1");

  const AliasTable table(distribution);
  std::vector<SampleId> ids(n_epoch);
  for (auto& id : ids) {
    id = table.sample(rng);
  }
  return ids;
}

/// Consecutive chunks of batch_size; the last chunk may be short.
inline std::vector<Batch> make_batches(std::span<const SampleId> ids, std::size_t batch_size) {
  detail::require(!ids.empty(), "ids: must be nonempty");
  detail::require(batch_size >= 1, "batch_size: must be >= 1");
  std::vector<Batch> batches;
  batches.reserve((ids.size() + batch_size - 1) / batch_size);
  for (std::size_t start = 0; start < ids.size(); start += batch_size) {
    const std::size_t stop = std::min(ids.size(), start + batch_size);
    batches.emplace_back(ids.begin() + static_cast<std::ptrdiff_t>(start),
                         ids.begin() + static_cast<std::ptrdiff_t>(stop));
  }
  return batches;
}

}  // namespace cursamp
