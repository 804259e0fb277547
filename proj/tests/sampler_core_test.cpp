#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include <gtest/gtest.h>

#include "cursamp/alias_table.hpp"
#include "cursamp/epoch_sampling.hpp"
#include "cursamp/sampler_registry.hpp"
#include "cursamp/weights.hpp"

using namespace cursamp;

namespace {

SampleState state_with(std::vector<double> losses, std::size_t c = 5) {
  SampleState s(0, c);
  for (double l : losses) s.record(l);
  return s;
}

}  // namespace

TEST(CurriculumConfig, Defaults) {
  const auto cfg = CurriculumConfig::for_dataset(1000);
  EXPECT_DOUBLE_EQ(cfg.alpha, 2.0);
  EXPECT_DOUBLE_EQ(cfg.epsilon, 0.2);
  EXPECT_EQ(cfg.window_c, 5u);
  EXPECT_EQ(cfg.n_epoch, 100u);
  EXPECT_EQ(CurriculumConfig::for_dataset(1001).n_epoch, 101u);
  EXPECT_EQ(CurriculumConfig::for_dataset(7).n_epoch, 1u);
}

TEST(CurriculumConfig, RejectsOutOfRange) {
  CurriculumConfig cfg;
  cfg.epsilon = 1.5;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = {};
  cfg.alpha = -1;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = {};
  cfg.window_c = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = {};
  cfg.n_epoch = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(RecordLoss, FirstVisit) {
  SamplerRegistry reg(1, CurriculumConfig{});
  reg.record_loss(0, 0.7);
  EXPECT_EQ(reg.state(0).recent_losses(), (std::deque<double>{0.7}));
  EXPECT_EQ(reg.state(0).visit_count(), 1u);
}

TEST(RecordLoss, FifoEviction) {
  CurriculumConfig cfg;
  cfg.window_c = 2;
  SamplerRegistry reg(1, cfg);
  reg.record_loss(0, 0.9);
  reg.record_loss(0, 0.5);
  reg.record_loss(0, 0.3);
  EXPECT_EQ(reg.state(0).recent_losses(), (std::deque<double>{0.5, 0.3}));
  EXPECT_EQ(reg.state(0).visit_count(), 3u);
}

TEST(RecordLoss, RejectsBadLossAndUnknownId) {
  SamplerRegistry reg(2, CurriculumConfig{});
  EXPECT_THROW(reg.record_loss(0, std::nan("")), ValidationError);
  EXPECT_THROW(reg.record_loss(0, -0.1), ValidationError);
  EXPECT_THROW(reg.record_loss(0, std::numeric_limits<double>::infinity()), ValidationError);
  EXPECT_THROW(reg.record_loss(2, 0.5), LookupError);
  EXPECT_EQ(reg.state(0).visit_count(), 0u);
}

TEST(RecordLoss, BatchIsAtomic) {
  SamplerRegistry reg(3, CurriculumConfig{});
  const std::vector<std::pair<SampleId, double>> bad{{0, 0.5}, {1, std::nan("")}};
  EXPECT_THROW(reg.record_losses(bad), ValidationError);
  EXPECT_FALSE(reg.state(0).visited());
  const std::vector<std::pair<SampleId, double>> unknown{{0, 0.5}, {9, 0.1}};
  EXPECT_THROW(reg.record_losses(unknown), LookupError);
  EXPECT_FALSE(reg.state(0).visited());
}

TEST(Weight, Examples) {
  auto s = state_with({0.5});
  // Three more visits whose losses have scrolled out of a window of 1.
  SampleState four(0, 1);
  for (int i = 0; i < 4; ++i) four.record(0.5);
  EXPECT_DOUBLE_EQ(*weight(four, 2.0), 1.5);

  SampleState nine(0, 2);
  for (int i = 0; i < 7; ++i) nine.record(1.0);
  nine.record(0.2);
  nine.record(0.4);
  EXPECT_DOUBLE_EQ(*weight(nine, 0.0), 0.3);

  EXPECT_FALSE(weight(SampleState(0, 5), 2.0).has_value());
  EXPECT_DOUBLE_EQ(*weight(s, 2.0), 2.5);
}

TEST(Weight, PartialWindowAveragesWhatExists) {
  EXPECT_DOUBLE_EQ(state_with({0.2, 0.6}, 5).window_mean(), 0.4);
}

TEST(Weight, WindowSemanticsMatchFifoMean) {
  auto s = state_with({1.0, 2.0, 3.0}, 3);
  EXPECT_DOUBLE_EQ(*weight(s, 0.0), 2.0);
  s.record(6.0);  // evicts 1.0
  EXPECT_DOUBLE_EQ(*weight(s, 0.0), (2.0 + 3.0 + 6.0) / 3.0);
}

TEST(Weight, RevisitPressure) {
  // Same window, more visits: strictly lower weight when alpha > 0.
  SampleState a(0, 1);
  SampleState b(1, 1);
  a.record(0.4);
  for (int i = 0; i < 10; ++i) b.record(0.4);
  EXPECT_GT(*weight(a, 2.0), *weight(b, 2.0));
  double prev = *weight(b, 2.0);
  for (int i = 0; i < 50; ++i) {
    b.record(0.4);
    const double w = *weight(b, 2.0);
    EXPECT_LT(w, prev);
    prev = w;
  }
}

TEST(RescaleWeights, Examples) {
  const std::vector<double> w{1.0, 3.0, 2.0};
  EXPECT_EQ(rescale_weights(std::span<const double>(w)), (std::vector<double>{0.0, 1.0, 0.5}));
  const std::vector<double> flat{0.7, 0.7, 0.7};
  EXPECT_EQ(rescale_weights(std::span<const double>(flat)), (std::vector<double>{0.5, 0.5, 0.5}));
  const std::vector<std::optional<double>> with_sentinel{1.0, std::nullopt, 3.0};
  EXPECT_EQ(rescale_weights(std::span<const std::optional<double>>(with_sentinel)),
            (std::vector<double>{0.0, 1.0, 1.0}));
}

TEST(RescaleWeights, AllUnvisitedIsConstant) {
  const std::vector<std::optional<double>> none(4, std::nullopt);
  EXPECT_EQ(rescale_weights(std::span<const std::optional<double>>(none)),
            std::vector<double>(4, 0.5));
}

TEST(RescaleWeights, EmptyIsError) {
  EXPECT_THROW(rescale_weights(std::span<const double>()), ValidationError);
}

TEST(Distribution, Examples) {
  EXPECT_EQ(distribution(std::vector<double>{0.5, 0.5}, 0.2), (std::vector<double>{0.5, 0.5}));

  // Frozen from a 40-digit evaluation of 0.8 e/(e+1) + 0.1 and 0.8/(e+1) + 0.1.
  const auto pi = distribution(std::vector<double>{1.0, 0.0}, 0.2);
  EXPECT_NEAR(pi[0], 0.68484686290400394, 1e-15);
  EXPECT_NEAR(pi[1], 0.31515313709599611, 1e-15);

  const auto u = distribution(std::vector<double>{0.3, 0.9, 0.6}, 1.0);
  for (double p : u) EXPECT_EQ(p, 1.0 / 3.0);
}

TEST(Distribution, RejectsWeightsOutsideUnitInterval) {
  EXPECT_THROW(distribution(std::vector<double>{0.5, 1.5}, 0.2), ValidationError);
  EXPECT_THROW(distribution(std::vector<double>{-0.1}, 0.2), ValidationError);
  EXPECT_THROW(distribution(std::vector<double>{0.5}, 1.2), ValidationError);
}

TEST(Distribution, PropertiesOnRandomVectors) {
  Rng rng = make_rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    const double eps = trial % 5 == 0 ? 0.0 : uniform01(rng) * 0.999;
    std::vector<double> w(n);
    for (double& x : w) x = uniform01(rng);
    const auto pi = distribution(w, eps);
    EXPECT_LE(std::abs(std::accumulate(pi.begin(), pi.end(), 0.0) - 1.0), 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GE(pi[i], eps / static_cast<double>(n) - 1e-12);
      for (std::size_t j = 0; j < std::min<std::size_t>(n, 20); ++j) {
        if (w[i] > w[j]) {
          EXPECT_GE(pi[i], pi[j]);
        }
      }
    }
  }
}

TEST(SampleEpoch, PointMass) {
  Rng rng = make_rng(1);
  EXPECT_EQ(sample_epoch(std::vector<double>{1.0, 0.0}, 5, rng),
            (std::vector<SampleId>{0, 0, 0, 0, 0}));
}

TEST(SampleEpoch, UniformCountsWithinThreeSigma) {
  Rng rng = make_rng(77);
  const std::size_t n = 100000;
  const auto ids = sample_epoch(std::vector<double>(4, 0.25), n, rng);
  ASSERT_EQ(ids.size(), n);
  std::vector<std::size_t> counts(4, 0);
  for (auto id : ids) ++counts.at(id);
  const double sigma = std::sqrt(n * 0.25 * 0.75);
  for (auto c : counts) EXPECT_LE(std::abs(static_cast<double>(c) - 25000.0), 3 * sigma);
}

TEST(SampleEpoch, DeterministicForSeed) {
  const std::vector<double> pi{0.1, 0.2, 0.3, 0.4};
  Rng a = make_rng(5);
  Rng b = make_rng(5);
  EXPECT_EQ(sample_epoch(pi, 1000, a), sample_epoch(pi, 1000, b));
}

TEST(AliasTable, FrequenciesMatchProbabilities) {
  const std::vector<double> pi{0.05, 0.5, 0.0, 0.15, 0.3};
  const AliasTable table(pi);
  Rng rng = make_rng(3);
  const std::size_t draws = 200000;
  std::vector<std::size_t> counts(pi.size(), 0);
  for (std::size_t i = 0; i < draws; ++i) ++counts[table.sample(rng)];
  EXPECT_EQ(counts[2], 0u);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const double sigma = std::sqrt(draws * pi[i] * (1 - pi[i]));
    EXPECT_LE(std::abs(static_cast<double>(counts[i]) - draws * pi[i]), 4 * sigma + 1e-9) << i;
  }
}

TEST(MakeBatches, Examples) {
  const std::vector<SampleId> ids{3, 1, 4, 1, 5};
  EXPECT_EQ(make_batches(ids, 2), (std::vector<Batch>{{3, 1}, {4, 1}, {5}}));
  EXPECT_EQ(make_batches(std::vector<SampleId>{7}, 4), (std::vector<Batch>{{7}}));
  EXPECT_EQ(make_batches(ids, 1), (std::vector<Batch>{{3}, {1}, {4}, {1}, {5}}));
  EXPECT_THROW(make_batches(std::vector<SampleId>{}, 2), ValidationError);
}

TEST(MakeBatches, ConcatenationRestoresInput) {
  Rng rng = make_rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SampleId> ids(1 + rng() % 50);
    for (auto& id : ids) id = rng() % 1000;
    const auto batches = make_batches(ids, 1 + rng() % 12);
    std::vector<SampleId> flat;
    for (const auto& b : batches) flat.insert(flat.end(), b.begin(), b.end());
    EXPECT_EQ(flat, ids);
  }
}

TEST(Registry, FreshRegistryDrawsUniformly) {
  SamplerRegistry reg(8, CurriculumConfig{});
  EXPECT_EQ(reg.distribution(), std::vector<double>(8, 1.0 / 8.0));
}

TEST(Registry, UnvisitedSampleGetsCohortMaximum) {
  SamplerRegistry reg(3, CurriculumConfig{});
  reg.record_loss(0, 0.1);
  reg.record_loss(1, 0.9);
  const auto pi = reg.distribution();
  EXPECT_DOUBLE_EQ(pi[2], pi[1]);
  EXPECT_GT(pi[1], pi[0]);
}

TEST(Registry, NextEpochAdvancesByOne) {
  CurriculumConfig cfg;
  cfg.n_epoch = 7;
  cfg.batch_size = 3;
  SamplerRegistry reg(20, cfg);
  Rng rng = make_rng(1);
  for (std::uint64_t e = 0; e < 4; ++e) {
    const auto plan = next_epoch(reg, rng);
    EXPECT_EQ(plan.epoch, e);
    EXPECT_EQ(plan.ids.size(), 7u);
    EXPECT_EQ(plan.batches.size(), 3u);
    EXPECT_EQ(reg.epoch_index(), e + 1);
    for (auto id : plan.ids) reg.record_loss(id, 0.5);
  }
}

TEST(Registry, SamplingIsPureFunctionOfStateConfigAndSeed) {
  CurriculumConfig cfg;
  cfg.n_epoch = 30;
  SamplerRegistry a(50, cfg);
  Rng fill = make_rng(4);
  for (int i = 0; i < 200; ++i) a.record_loss(fill() % 50, uniform01(fill));
  SamplerRegistry b = a;
  Rng ra = make_rng(11);
  Rng rb = make_rng(11);
  EXPECT_EQ(next_epoch(a, ra).ids, next_epoch(b, rb).ids);
}
