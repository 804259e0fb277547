#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cursamp/curriculum_config.hpp"
#include "cursamp/epoch_sampling.hpp"
#include "cursamp/errors.hpp"
#include "cursamp/random.hpp"
#include "cursamp/sample_state.hpp"
#include "cursamp/weights.hpp"

namespace cursamp {

/// One SampleState per dataset sample (ids 0..n-1) plus the epoch counter.
///
/// Mutation is single-writer. distribution() reads a consistent snapshot and
/// may run concurrently with other readers.
class SamplerRegistry {
public:
  SamplerRegistry(std::size_t dataset_size, CurriculumConfig config)
      : config_(std::move(config)) {
    config_.validate();
    detail::require(dataset_size >= 1, "dataset_size: must be >= 1");
    states_.reserve(dataset_size);
    for (std::size_t i = 0; i < dataset_size; ++i) {
      states_.emplace_back(i, config_.window_c);
    }
  }

  /// Rebuilds a registry from checkpointed parts; states must cover ids 0..n-1 in order.
  SamplerRegistry(CurriculumConfig config, std::vector<SampleState> states,
                  std::uint64_t epoch_index)
      : config_(std::move(config)), states_(std::move(states)), epoch_index_(epoch_index) {
    config_.validate();
    detail::require(!states_.empty(), "states: must be nonempty");
    for (std::size_t i = 0; i < states_.size(); ++i) {
      detail::require(states_[i].id() == i, "states: ids must be 0..n-1 in order");
      detail::require(states_[i].window_c() == config_.window_c,
                      "states: window length differs from config.window_c");
    }
  }

  const CurriculumConfig& config() const noexcept { return config_; }
  std::size_t size() const noexcept { return states_.size(); }
  std::uint64_t epoch_index() const noexcept { return epoch_index_; }
  std::span<const SampleState> states() const noexcept { return states_; }

  const SampleState& state(SampleId id) const {
    check_id(id);
    return states_[id];
  }

  void record_loss(SampleId id, double loss) {
    check_id(id);
    states_[id].record(loss);
  }

  /// Applies every (id, loss) pair or none of them.
  void record_losses(std::span<const std::pair<SampleId, double>> pairs) {
    for (const auto& [id, loss] : pairs) {
      check_id(id);
      SampleState::check_loss(loss);
    }
    for (const auto& [id, loss] : pairs) {
      states_[id].record(loss);
    }
  }

  void advance_epoch() noexcept { ++epoch_index_; }

  /// Sampling distribution for the coming epoch.
  std::vector<double> distribution() const {
    const auto w = cohort_weights(states_, config_.alpha);
    const auto rescaled = rescale_weights(std::span<const std::optional<double>>(w));
    return cursamp::distribution(rescaled, config_.epsilon);
  }

  friend bool operator==(const SamplerRegistry&, const SamplerRegistry&) = default;

private:
  void check_id(SampleId id) const {
    if (id >= states_.size()) {
      throw LookupError("unknown sample id " + std::to_string(id));
    }
  }

  CurriculumConfig config_;
  std::vector<SampleState> states_;
  std::uint64_t epoch_index_ = 0;
};

/// Output of one scheduling step: the drawn sequence and its batching.
struct EpochPlan {
  std::uint64_t epoch = 0;
  std::vector<SampleId> ids;
  std::vector<Batch> batches;
};

/// Builds the distribution once, draws n_epoch ids, groups them into batches
/// and advances the epoch counter. Losses for the drawn ids are reported
/// afterwards through record_loss / record_losses.
inline EpochPlan next_epoch(SamplerRegistry& registry, Rng& rng) {
  EpochPlan plan;
  plan.epoch = registry.epoch_index();
  const auto pi = registry.distribution();
  plan.ids = sample_epoch(pi, registry.config().n_epoch, rng);
  plan.batches = make_batches(plan.ids, registry.config().batch_size);
  registry.advance_epoch();
  return plan;
}

}  // namespace cursamp
