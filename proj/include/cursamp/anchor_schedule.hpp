#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "cursamp/errors.hpp"

namespace cursamp {

/// Confidence window [xi, eta] for negative anchors.
struct ConfidenceWindow {
  double xi = 0.0;
  double eta = 1.0;
};

/// Which clock drives the schedule's step counter.
enum class StepClock { epoch, iteration };

/// Linear descent of the negative-confidence window from
/// [xi_start, eta_start] at step 0 to [0, eta_end] at step total_steps.
struct AnchorSchedule {
  double xi_start = 0.5;
  double eta_start = 1.0;
  double eta_end = 0.3;
  std::uint64_t total_steps = 1;
  StepClock clock = StepClock::epoch;

  void validate() const {
    auto unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
    detail::require(unit(xi_start), "xi_start: must be in [0, 1]");
    detail::require(unit(eta_start), "eta_start: must be in [0, 1]");
    detail::require(unit(eta_end), "eta_end: must be in [0, 1]");
    detail::require(xi_start <= eta_start, "xi_start: must be <= eta_start");
    detail::require(eta_end <= eta_start, "eta_end: must be <= eta_start");
    detail::require(total_steps >= 1, "total_steps: must be >= 1");
  }

  /// Maps a training position onto the schedule clock. With the epoch clock
  /// the step is the epoch index; with the iteration clock it is the global
  /// batch counter. Past the end the schedule holds its terminal window.
  std::uint64_t step_for(std::uint64_t epoch, std::uint64_t iteration) const {
    const std::uint64_t raw = clock == StepClock::epoch ? epoch : iteration;
    return std::min(raw, total_steps);
  }
};

inline ConfidenceWindow thresholds_at(const AnchorSchedule& schedule, std::uint64_t step) {
  schedule.validate();
  if (step > schedule.total_steps) {
    throw ValidationError("step: " + std::to_string(step) + " outside [0, " +
                          std::to_string(schedule.total_steps) + "]");
  }
  const double f = static_cast<double>(step) / static_cast<double>(schedule.total_steps);
  // Both endpoints come out exact in floating point in this form.
  const double xi = schedule.xi_start * (1.0 - f);
  const double eta = (1.0 - f) * schedule.eta_start + f * schedule.eta_end;
  return {std::min(xi, eta), eta};
}

}  // namespace cursamp
