#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cursamp/errors.hpp"
#include "cursamp/random.hpp"
#include "cursamp/sample_state.hpp"

namespace cursamp {

/// Generator parameters for heterogeneous tasks: L_i(0) ~ U[loss_min, loss_max],
/// rho_i ~ U[decay_min, decay_max].
struct TaskParams {
  std::size_t n_samples = 1000;
  double initial_loss_min = 0.5;
  double initial_loss_max = 1.5;
  double decay_min = 0.9;
  double decay_max = 0.999;
  double noise_sigma = 0.1;
  double forgetting_rate = 0.0;

  void validate() const {
    detail::require(n_samples >= 1, "n_samples: must be >= 1");
    detail::require(initial_loss_min > 0.0 && initial_loss_min <= initial_loss_max &&
                        std::isfinite(initial_loss_max),
                    "initial_loss: need 0 < min <= max");
    detail::require(decay_min > 0.0 && decay_min <= decay_max && decay_max < 1.0,
                    "decay: need 0 < min <= max < 1");
    detail::require(std::isfinite(noise_sigma) && noise_sigma >= 0.0, "noise_sigma: must be >= 0");
    detail::require(std::isfinite(forgetting_rate) && forgetting_rate >= 0.0,
                    "forgetting_rate: must be >= 0");
  }
};

/// Stand-in for a learner: per-sample loss that decays geometrically with
/// visits and regrows while a sample goes unvisited.
///
/// True loss after v visits with s epochs since the last one:
///   min(L0, L0 * rho^v * (1 + phi)^s)
/// Observations multiply the true loss by exp(sigma * z), z ~ N(0, 1).
class SyntheticTask {
public:
  SyntheticTask(std::vector<double> initial_losses, std::vector<double> decay_rates,
                double noise_sigma, double forgetting_rate)
      : initial_(std::move(initial_losses)),
        decay_(std::move(decay_rates)),
        sigma_(noise_sigma),
        phi_(forgetting_rate) {
    detail::require(!initial_.empty(), "initial_losses: must be nonempty");
    detail::require(initial_.size() == decay_.size(),
                    "decay_rates: one entry per sample required");
    for (double l : initial_) {
      detail::require(std::isfinite(l) && l > 0.0, "initial_losses: must be > 0");
    }
    for (double r : decay_) {
      detail::require(r > 0.0 && r < 1.0, "decay_rates: must lie in (0, 1)");
    }
    detail::require(std::isfinite(sigma_) && sigma_ >= 0.0, "noise_sigma: must be >= 0");
    detail::require(std::isfinite(phi_) && phi_ >= 0.0, "forgetting_rate: must be >= 0");
    decayed_ = initial_;
    visits_.assign(initial_.size(), 0);
    staleness_.assign(initial_.size(), 0);
    touched_.assign(initial_.size(), false);
  }

  static SyntheticTask generate(const TaskParams& p, Rng& rng) {
    p.validate();
    std::vector<double> l0(p.n_samples);
    std::vector<double> rho(p.n_samples);
    std::uniform_real_distribution<double> loss(p.initial_loss_min, p.initial_loss_max);
    std::uniform_real_distribution<double> decay(p.decay_min, p.decay_max);
    for (std::size_t i = 0; i < p.n_samples; ++i) {
      l0[i] = loss(rng);
      rho[i] = decay(rng);
    }
    return SyntheticTask(std::move(l0), std::move(rho), p.noise_sigma, p.forgetting_rate);
  }

  std::size_t size() const noexcept { return initial_.size(); }
  double initial_loss(SampleId id) const { return initial_.at(id); }
  std::uint64_t visits(SampleId id) const { return visits_.at(id); }
  std::uint64_t staleness(SampleId id) const { return staleness_.at(id); }

  double true_loss(SampleId id) const {
    check(id);
    if (phi_ == 0.0 || staleness_[id] == 0) return decayed_[id];
    const double grown = decayed_[id] * std::pow(1.0 + phi_, static_cast<double>(staleness_[id]));
    return std::min(initial_[id], grown);
  }

  /// Noisy loss of one training step on `id`, then one visit's decay.
  double observe_loss(SampleId id, Rng& rng) {
    check(id);
    const double z = standard_normal(rng);
    const double observed = true_loss(id) * std::exp(sigma_ * z);
    ++visits_[id];
    decayed_[id] = initial_[id] * std::pow(decay_[id], static_cast<double>(visits_[id]));
    staleness_[id] = 0;
    touched_[id] = true;
    return observed;
  }

  /// Ages every sample not observed since the previous end_epoch().
  void end_epoch() {
    for (std::size_t i = 0; i < size(); ++i) {
      if (!touched_[i]) ++staleness_[i];
      touched_[i] = false;
    }
  }

  double mean_true_loss() const {
    double total = 0.0;
    for (std::size_t i = 0; i < size(); ++i) total += true_loss(i);
    return total / static_cast<double>(size());
  }

  double max_true_loss() const {
    double best = 0.0;
    for (std::size_t i = 0; i < size(); ++i) best = std::max(best, true_loss(i));
    return best;
  }

  std::uint64_t max_staleness() const {
    return *std::max_element(staleness_.begin(), staleness_.end());
  }

private:
  void check(SampleId id) const {
    if (id >= size()) throw LookupError("unknown sample id " + std::to_string(id));
  }

  std::vector<double> initial_;
  std::vector<double> decay_;
  double sigma_;
  double phi_;
  std::vector<double> decayed_;
  std::vector<std::uint64_t> visits_;
  std::vector<std::uint64_t> staleness_;
  std::vector<bool> touched_;
};

}  // namespace cursamp
