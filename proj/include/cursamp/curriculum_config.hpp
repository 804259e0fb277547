#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "cursamp/errors.hpp"

namespace cursamp {

/// Hyperparameters of the bandit-style curriculum sampler.
struct CurriculumConfig {
  double alpha = 2.0;       // exploration coefficient on 1/sqrt(visits)
  double epsilon = 0.2;     // uniform mixing floor
  std::size_t window_c = 5; // recent-loss window length
  std::size_t n_epoch = 1;  // draws per epoch
  std::size_t batch_size = 1;

  /// Defaults with n_epoch = ceil(0.1 * dataset_size).
  static CurriculumConfig for_dataset(std::size_t dataset_size) {
    CurriculumConfig cfg;
    cfg.n_epoch = dataset_size == 0 ? 1 : (dataset_size + 9) / 10;
    return cfg;
  }

  /// Throws ValidationError naming the offending field.
  void validate() const {
    detail::require(std::isfinite(alpha) && alpha >= 0.0, "alpha: must be finite and >= 0");
    detail::require(std::isfinite(epsilon) && epsilon >= 0.0 && epsilon <= 1.0,
                    "epsilon: must be in [0, 1]");
    detail::require(window_c >= 1, "window_c: must be >= 1");
    detail::require(n_epoch >= 1, "n_epoch: must be >= 1");
    detail::require(batch_size >= 1, "batch_size: must be >= 1");
  }

  friend bool operator==(const CurriculumConfig&, const CurriculumConfig&) = default;
};

}  // namespace cursamp
