#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "cursamp/curriculum_experiment.hpp"
#include "cursamp/synthetic_task.hpp"

using namespace cursamp;

namespace {

SyntheticTask make_task(std::uint64_t seed, std::size_t n = 1000, double phi = 0.0) {
  TaskParams p;
  p.n_samples = n;
  p.forgetting_rate = phi;
  Rng rng = make_rng(seed, 1);
  return SyntheticTask::generate(p, rng);
}

CurriculumConfig reference_config() {
  CurriculumConfig cfg;
  cfg.n_epoch = 100;
  cfg.batch_size = 10;
  return cfg;
}

}  // namespace

TEST(ObserveLoss, NoiselessDecay) {
  SyntheticTask task({1.0}, {0.5}, 0.0, 0.0);
  Rng rng = make_rng(0);
  EXPECT_EQ(task.observe_loss(0, rng), 1.0);
  EXPECT_EQ(task.true_loss(0), 0.5);
  EXPECT_EQ(task.observe_loss(0, rng), 0.5);
  EXPECT_EQ(task.observe_loss(0, rng), 0.25);
  EXPECT_EQ(task.visits(0), 3u);
}

TEST(ObserveLoss, RegrowthWhileUnvisited) {
  SyntheticTask task({1.0}, {0.5}, 0.0, 0.1);
  Rng rng = make_rng(0);
  task.observe_loss(0, rng);
  task.end_epoch();
  task.end_epoch();
  task.end_epoch();
  EXPECT_EQ(task.staleness(0), 2u);
  EXPECT_NEAR(task.true_loss(0), 0.605, 1e-12);
  for (int e = 0; e < 50; ++e) task.end_epoch();
  EXPECT_EQ(task.true_loss(0), 1.0);
}

TEST(ObserveLoss, NoiseIsLogNormal) {
  SyntheticTask task({1.0}, {0.999999}, 0.1, 0.0);
  Rng rng = make_rng(5);
  double sum = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) sum += std::log(task.observe_loss(0, rng) / task.initial_loss(0));
  EXPECT_NEAR(sum / draws, 0.0, 4 * 0.1 / std::sqrt(draws) + 0.02);
}

TEST(ObserveLoss, RejectsUnknownId) {
  SyntheticTask task({1.0, 1.0}, {0.5, 0.5}, 0.0, 0.0);
  Rng rng = make_rng(0);
  EXPECT_THROW(task.observe_loss(2, rng), LookupError);
}

TEST(SyntheticTask, RejectsInvalidParameters) {
  EXPECT_THROW(SyntheticTask({1.0}, {1.0}, 0.0, 0.0), ValidationError);
  EXPECT_THROW(SyntheticTask({0.0}, {0.5}, 0.0, 0.0), ValidationError);
  EXPECT_THROW(SyntheticTask({1.0}, {0.5}, -0.1, 0.0), ValidationError);
  TaskParams p;
  p.decay_max = 1.0;
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(RunExperiment, SingleSampleStrategiesCoincide) {
  const auto task = make_task(0, 1);
  CurriculumConfig cfg;
  ExperimentOptions opts{50, std::nullopt};
  std::vector<std::vector<double>> curves;
  for (auto s : {Strategy::curriculum, Strategy::uniform, Strategy::greedy_hard_mining}) {
    Rng rng = make_rng(4);
    std::vector<double> curve;
    for (const auto& r : run_experiment(task, s, opts, cfg, rng)) curve.push_back(r.mean_true_loss);
    curves.push_back(curve);
  }
  EXPECT_EQ(curves[0], curves[1]);
  EXPECT_EQ(curves[0], curves[2]);
}

TEST(RunExperiment, UniformMatchesBinomialExpectation) {
  const auto task = make_task(0);
  const auto cfg = reference_config();
  const std::size_t epochs = 200;
  const double draws = static_cast<double>(epochs * cfg.n_epoch);
  const double n = static_cast<double>(task.size());

  // Visits to a sample are Binomial(draws, 1/n), so E[rho^V] = (1 - (1 - rho)/n)^draws.
  TaskParams p;
  Rng gen = make_rng(0, 1);
  std::vector<double> l0(task.size()), rho(task.size());
  std::uniform_real_distribution<double> loss(p.initial_loss_min, p.initial_loss_max);
  std::uniform_real_distribution<double> decay(p.decay_min, p.decay_max);
  for (std::size_t i = 0; i < task.size(); ++i) {
    l0[i] = loss(gen);
    rho[i] = decay(gen);
  }
  double expected = 0.0;
  for (std::size_t i = 0; i < task.size(); ++i) {
    expected += l0[i] * std::pow(1.0 - (1.0 - rho[i]) / n, draws);
  }
  expected /= n;

  std::vector<double> finals;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_rng(seed, 2);
    finals.push_back(run_experiment(task, Strategy::uniform, {epochs, std::nullopt}, cfg, rng)
                         .back()
                         .mean_true_loss);
  }
  const double mean = std::accumulate(finals.begin(), finals.end(), 0.0) / finals.size();
  double ss = 0.0;
  for (double f : finals) ss += (f - mean) * (f - mean);
  const double se = std::sqrt(ss / (finals.size() - 1)) / std::sqrt(finals.size());
  EXPECT_NEAR(mean, expected, 2 * se);
}

TEST(RunExperiment, ReportsAreConsistent) {
  const auto task = make_task(1, 300, 0.05);
  const auto cfg = reference_config();
  for (auto s : {Strategy::curriculum, Strategy::uniform, Strategy::greedy_hard_mining}) {
    Rng rng = make_rng(1, 2);
    const auto reports = run_experiment(task, s, {100, std::nullopt}, cfg, rng);
    ASSERT_EQ(reports.size(), 100u);
    for (std::size_t e = 0; e < reports.size(); ++e) {
      EXPECT_EQ(reports[e].epoch, e);
      EXPECT_EQ(reports[e].selections(), cfg.n_epoch);
      EXPECT_LE(reports[e].max_true_loss, 1.5);
      EXPECT_LE(reports[e].mean_true_loss, reports[e].max_true_loss);
    }
  }
}

TEST(RunExperiment, StopsAtTarget) {
  const auto task = make_task(2, 200);
  CurriculumConfig cfg;
  cfg.n_epoch = 200;
  cfg.batch_size = 10;
  Rng rng = make_rng(2, 2);
  const auto reports = run_experiment(task, Strategy::uniform, {5000, 0.5}, cfg, rng);
  ASSERT_LT(reports.size(), 5000u);
  EXPECT_LE(reports.back().mean_true_loss, 0.5);
  EXPECT_GT(reports[reports.size() - 2].mean_true_loss, 0.5);
}

TEST(RunExperiment, FlatCurriculumIsUniform) {
  const auto task = make_task(3, 500, 0.01);
  CurriculumConfig cfg = reference_config();
  cfg.alpha = 0.0;
  cfg.epsilon = 1.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng a = make_rng(seed, 2);
    Rng b = make_rng(seed, 2);
    const auto cur = run_experiment(task, Strategy::curriculum, {100, std::nullopt}, cfg, a);
    const auto uni = run_experiment(task, Strategy::uniform, {100, std::nullopt}, cfg, b);
    ASSERT_EQ(cur.size(), uni.size());
    for (std::size_t e = 0; e < cur.size(); ++e) {
      EXPECT_EQ(cur[e].selection_histogram, uni[e].selection_histogram);
      EXPECT_EQ(cur[e].mean_true_loss, uni[e].mean_true_loss);
    }
  }
}

TEST(RunExperiment, CurriculumNeverLeavesASampleUnvisitedFor100Epochs) {
  const auto task = make_task(0, 1000, 0.05);
  Rng rng = make_rng(0, 2);
  const auto reports =
      run_experiment(task, Strategy::curriculum, {3000, std::nullopt}, reference_config(), rng);
  std::uint64_t worst = 0;
  for (const auto& r : reports) worst = std::max(worst, r.max_staleness);
  EXPECT_LT(worst, 100u);
}

TEST(GreedyDistribution, PrefersUnseenThenHighestLoss) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> last{0.2, inf, 0.9, 0.5};
  EXPECT_EQ(greedy_distribution(last, 2), (std::vector<double>{0.0, 0.5, 0.5, 0.0}));
  EXPECT_EQ(greedy_distribution(last, 10), (std::vector<double>(4, 0.25)));
}

TEST(TimeToTarget, Examples) {
  std::vector<EpochReport> reports(3);
  reports[0] = {0, 1.0, 1.0, {}, 0};
  reports[1] = {1, 0.5, 1.0, {}, 0};
  reports[2] = {2, 0.04, 0.1, {}, 0};
  EXPECT_EQ(time_to_target(reports, 0.05), 2u);
  EXPECT_EQ(time_to_target(reports, 0.5), 1u);
  EXPECT_EQ(time_to_target(reports, 0.01), std::nullopt);
  EXPECT_THROW(time_to_target(reports, 0.0), ValidationError);
}
