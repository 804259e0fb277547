#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>

#include "cursamp/errors.hpp"

namespace cursamp {

using SampleId = std::size_t;

/// Per-sample bookkeeping: a FIFO of the most recent losses plus a visit count.
class SampleState {
public:
  SampleState() = default;
  SampleState(SampleId id, std::size_t window_c) : id_(id), window_c_(window_c) {
    detail::require(window_c >= 1, "window_c: must be >= 1");
  }

  /// Restores a state from checkpointed fields. The window is truncated to
  /// its newest window_c entries.
  static SampleState restore(SampleId id, std::size_t window_c, std::deque<double> losses,
                             std::uint64_t visits) {
    SampleState s(id, window_c);
    detail::require(losses.size() <= visits, "visits: fewer than stored losses");
    for (double loss : losses) {
      check_loss(loss);
    }
    while (losses.size() > window_c) {
      losses.pop_front();
    }
    s.losses_ = std::move(losses);
    s.visits_ = visits;
    return s;
  }

  static void check_loss(double loss) {
    detail::require(std::isfinite(loss) && loss >= 0.0,
                    "loss: must be finite and >= 0 (got " + std::to_string(loss) + ")");
  }

  void record(double loss) {
    check_loss(loss);
    if (losses_.size() == window_c_) {
      losses_.pop_front();
    }
    losses_.push_back(loss);
    ++visits_;
  }

  SampleId id() const noexcept { return id_; }
  std::size_t window_c() const noexcept { return window_c_; }
  const std::deque<double>& recent_losses() const noexcept { return losses_; }
  std::uint64_t visit_count() const noexcept { return visits_; }
  bool visited() const noexcept { return visits_ > 0; }

  /// Mean over the stored window; partial windows average what exists.
  double window_mean() const {
    if (losses_.empty()) {
      return 0.0;
    }
    return std::accumulate(losses_.begin(), losses_.end(), 0.0) /
           static_cast<double>(losses_.size());
  }

  friend bool operator==(const SampleState&, const SampleState&) = default;

private:
  SampleId id_ = 0;
  std::size_t window_c_ = 1;
  std::deque<double> losses_;
  std::uint64_t visits_ = 0;
};

}  // namespace cursamp
