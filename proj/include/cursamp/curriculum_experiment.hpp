#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cursamp/curriculum_config.hpp"
#include "cursamp/epoch_sampling.hpp"
#include "cursamp/errors.hpp"
#include "cursamp/random.hpp"
#include "cursamp/sampler_registry.hpp"
#include "cursamp/synthetic_task.hpp"

namespace cursamp {

enum class Strategy { curriculum, uniform, greedy_hard_mining };

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::curriculum: return "curriculum";
    case Strategy::uniform: return "uniform";
    case Strategy::greedy_hard_mining: return "greedy_hard_mining";
  }
  return "?";
}

inline Strategy parse_strategy(std::string_view name) {
  for (auto s : {Strategy::curriculum, Strategy::uniform, Strategy::greedy_hard_mining}) {
    if (to_string(s) == name) return s;
  }
  throw ValidationError("strategy: unknown strategy '" + std::string(name) + "'");
}

/// Metrics after one epoch, computed on noise-free losses.
struct EpochReport {
  std::uint64_t epoch = 0;
  double mean_true_loss = 0.0;
  double max_true_loss = 0.0;
  /// (sample id, times drawn) for every id drawn this epoch, ascending by id.
  std::vector<std::pair<SampleId, std::uint32_t>> selection_histogram;
  std::uint64_t max_staleness = 0;

  std::uint64_t selections() const {
    std::uint64_t total = 0;
    for (const auto& [id, count] : selection_histogram) total += count;
    return total;
  }
};

/// Uniform over the n_epoch samples with the highest last-observed loss.
/// Never-observed samples rank first; ties go to the lower id.
inline std::vector<double> greedy_distribution(std::span<const double> last_seen,
                                               std::size_t n_epoch) {
  const std::size_t n = last_seen.size();
  const std::size_t top = std::min(n, n_epoch);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (last_seen[a] != last_seen[b]) return last_seen[a] > last_seen[b];
                      return a < b;
                    });
  std::vector<double> pi(n, 0.0);
  for (std::size_t i = 0; i < top; ++i) pi[order[i]] = 1.0 / static_cast<double>(top);
  return pi;
}

struct ExperimentOptions {
  std::size_t max_epochs = 1;
  /// Stop after the first epoch whose mean true loss is <= this value.
  std::optional<double> stop_at_target;
};

/// Trains `task` under `strategy`, one report per epoch. The engine's first
/// output seeds a separate noise stream, so strategies that draw the same
/// schedule observe identical losses.
inline std::vector<EpochReport> run_experiment(SyntheticTask task, Strategy strategy,
                                               const ExperimentOptions& options,
                                               const CurriculumConfig& config, Rng& rng) {
  detail::require(options.max_epochs >= 1, "max_epochs: must be >= 1");
  config.validate();
  Rng noise(rng());

  const std::size_t n = task.size();
  SamplerRegistry registry(n, config);
  std::vector<double> last_seen(n, std::numeric_limits<double>::infinity());
  const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));

  std::vector<EpochReport> reports;
  reports.reserve(options.max_epochs);
  for (std::size_t epoch = 0; epoch < options.max_epochs; ++epoch) {
    std::vector<SampleId> ids;
    switch (strategy) {
      case Strategy::curriculum:
        ids = next_epoch(registry, rng).ids;
        break;
      case Strategy::uniform:
        ids = sample_epoch(uniform, config.n_epoch, rng);
        break;
      case Strategy::greedy_hard_mining:
        ids = sample_epoch(greedy_distribution(last_seen, config.n_epoch), config.n_epoch, rng);
        break;
    }

    std::map<SampleId, std::uint32_t> histogram;
    for (const auto& batch : make_batches(ids, config.batch_size)) {
      for (SampleId id : batch) {
        const double loss = task.observe_loss(id, noise);
        if (strategy == Strategy::curriculum) registry.record_loss(id, loss);
        last_seen[id] = loss;
        ++histogram[id];
      }
    }
    task.end_epoch();

    EpochReport report;
    report.epoch = epoch;
    report.mean_true_loss = task.mean_true_loss();
    report.max_true_loss = task.max_true_loss();
    report.selection_histogram.assign(histogram.begin(), histogram.end());
    report.max_staleness = task.max_staleness();
    reports.push_back(std::move(report));

    if (options.stop_at_target && reports.back().mean_true_loss <= *options.stop_at_target) break;
  }
  return reports;
}

/// First epoch whose mean true loss is at or below `target`.
inline std::optional<std::uint64_t> time_to_target(std::span<const EpochReport> reports,
                                                   double target) {
  detail::require(target > 0.0, "target: must be > 0");
  for (const auto& r : reports) {
    if (r.mean_true_loss <= target) return r.epoch;
  }
  return std::nullopt;
}

}  // namespace cursamp
