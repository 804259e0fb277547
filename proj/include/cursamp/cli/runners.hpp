#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cursamp/anchor_schedule.hpp"
#include "cursamp/anchor_selection.hpp"
#include "cursamp/bandit_env.hpp"
#include "cursamp/bandit_policy.hpp"
#include "cursamp/checkpoint.hpp"
#include "cursamp/cli/experiment_config.hpp"
#include "cursamp/cli/output.hpp"
#include "cursamp/cli/worker_pool.hpp"
#include "cursamp/curriculum_experiment.hpp"
#include "cursamp/ks_test.hpp"
#include "cursamp/operation_log.hpp"
#include "cursamp/random.hpp"
#include "cursamp/regret.hpp"
#include "cursamp/reward_rescaling.hpp"
#include "cursamp/sampler_registry.hpp"
#include "cursamp/synthetic_task.hpp"

namespace cursamp::cli {

/// One acceptance flag evaluated from a finished run.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunOutcome {
  std::vector<Check> checks;
  std::vector<std::filesystem::path> files;
  nlohmann::json summary;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

// Engine streams derived from each seed.
inline constexpr std::uint64_t kTaskStream = 1;
inline constexpr std::uint64_t kRunStream = 2;
inline constexpr std::uint64_t kSessionSeedStream = 3;
inline constexpr std::uint64_t kSessionNoiseStream = 4;

namespace detail {

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double std_error(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
}

/// Median with unreached targets (nullopt) ordered after every finite value.
inline std::optional<double> median_of(std::vector<std::optional<std::uint64_t>> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
  });
  const std::size_t n = v.size();
  const auto& lo = v[(n - 1) / 2];
  const auto& hi = v[n / 2];
  if (!lo || !hi) return std::nullopt;
  return 0.5 * (static_cast<double>(*lo) + static_cast<double>(*hi));
}

inline nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::filesystem::path cell_path(const ExperimentConfig& cfg, std::uint64_t seed,
                                       std::string_view ext = ".csv") {
  return cfg.out_dir / (cfg.name + "-" + std::to_string(seed) + std::string(ext));
}

inline void write_summary(const ExperimentConfig& cfg, RunOutcome& outcome) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : outcome.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  outcome.summary["experiment"] = cfg.name;
  outcome.summary["kind"] = std::string(to_string(cfg.kind));
  outcome.summary["seeds"] = cfg.seeds;
  outcome.summary["checks"] = std::move(checks);
  const auto path = cfg.out_dir / (cfg.name + "-summary.json");
  write_file(path, outcome.summary.dump(2) + "\n");
  outcome.files.push_back(path);
}

inline std::size_t workers_for(const ExperimentConfig& cfg) {
  return cfg.workers == 0 ? default_workers() : cfg.workers;
}

}  // namespace detail

// ---------------------------------------------------------------- bandit

/// Environment whose arm means rotate by one position every `swap_every` steps.
inline BanditEnv rotating_env(const std::vector<double>& means, std::uint64_t swap_every,
                              std::uint64_t horizon) {
  BanditEnv env = BanditEnv::bernoulli(means);
  const std::size_t k = means.size();
  std::size_t shift = 0;
  for (std::uint64_t start = swap_every + 1; start <= horizon; start += swap_every) {
    ++shift;
    std::vector<ArmDistribution> arms;
    for (std::size_t i = 0; i < k; ++i) arms.emplace_back(BernoulliArm{means[(i + shift) % k]});
    env.add_phase(start, std::move(arms));
  }
  return env;
}

inline RunOutcome run_bandit(const ExperimentConfig& cfg) {
  const auto& b = cfg.bandit;
  const std::uint64_t max_h = *std::max_element(b.horizons.begin(), b.horizons.end());

  struct Cell {
    std::vector<std::vector<double>> regret;  // [policy][horizon]
    std::optional<double> stationary;
    std::optional<double> nonstationary;
    std::string csv;
  };

  auto cells = parallel_map(cfg.seeds.size(), detail::workers_for(cfg), [&](std::size_t idx) {
    const std::uint64_t seed = cfg.seeds[idx];
    Cell cell;
    std::ostringstream csv;
    csv << "seed,policy,horizon,regret,bound\n";
    const BanditEnv env = BanditEnv::bernoulli(b.means);
    for (std::size_t p = 0; p < b.policies.size(); ++p) {
      Rng rng = make_rng(seed, kRunStream + p);
      const auto trace = run_policy(env, b.policies[p], max_h, rng, b.options);
      auto& row = cell.regret.emplace_back();
      for (auto h : b.horizons) {
        const double r = trace.regret_at(h);
        row.push_back(r);
        csv << seed << ',' << to_string(b.policies[p]) << ',' << h << ',' << format_double(r) << ','
            << format_double(theorem1_bound(b.means, h)) << '\n';
      }
    }
    if (b.swap_every) {
      Rng rng_s = make_rng(seed, kRunStream + 100);
      cell.stationary = run_policy(env, PolicyKind::ucb1_greedy, max_h, rng_s, b.options).regret();
      Rng rng_n = make_rng(seed, kRunStream + 100);
      const auto ns = rotating_env(b.means, *b.swap_every, max_h);
      cell.nonstationary = run_policy(ns, PolicyKind::ucb1_greedy, max_h, rng_n, b.options).regret();
      csv << seed << ",ucb1_greedy@nonstationary," << max_h << ',' << format_double(*cell.nonstationary)
          << ",\n";
    }
    cell.csv = csv.str();
    return cell;
  });

  RunOutcome outcome;
  ensure_directory(cfg.out_dir);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto path = detail::cell_path(cfg, cfg.seeds[i]);
    write_file(path, cells[i].csv);
    outcome.files.push_back(path);
  }

  nlohmann::json results = nlohmann::json::array();
  for (std::size_t p = 0; p < b.policies.size(); ++p) {
    for (std::size_t h = 0; h < b.horizons.size(); ++h) {
      std::vector<double> regrets;
      for (const auto& c : cells) regrets.push_back(c.regret[p][h]);
      const double mean = detail::mean_of(regrets);
      const double bound = theorem1_bound(b.means, b.horizons[h]);
      const bool satisfied = mean <= bound;
      results.push_back({{"policy", std::string(to_string(b.policies[p]))},
                         {"horizon", b.horizons[h]},
                         {"mean_regret", mean},
                         {"std_error", detail::std_error(regrets)},
                         {"bound", bound},
                         {"bound_satisfied", satisfied}});
      if (b.policies[p] == PolicyKind::ucb1_greedy && b.options.ucb_bonus == BonusForm::classical) {
        outcome.checks.push_back({"theorem1_bound n=" + std::to_string(b.horizons[h]), satisfied,
                                  "mean regret " + format_double(mean) + " vs bound " +
                                      format_double(bound)});
      }
    }
  }
  outcome.summary["results"] = std::move(results);
  outcome.summary["bound_satisfied"] = outcome.all_passed();

  if (b.swap_every) {
    std::vector<double> st;
    std::vector<double> ns;
    for (const auto& c : cells) {
      st.push_back(*c.stationary);
      ns.push_back(*c.nonstationary);
    }
    const double ratio = detail::mean_of(ns) / detail::mean_of(st);
    outcome.summary["nonstationary"] = {{"swap_every", *b.swap_every},
                                        {"horizon", max_h},
                                        {"mean_regret_stationary", detail::mean_of(st)},
                                        {"mean_regret_nonstationary", detail::mean_of(ns)},
                                        {"ratio", ratio}};
    if (cfg.checks.min_nonstationary_ratio) {
      outcome.checks.push_back({"nonstationary_regret_ratio", ratio > *cfg.checks.min_nonstationary_ratio,
                                "ratio " + format_double(ratio) + " vs minimum " +
                                    format_double(*cfg.checks.min_nonstationary_ratio)});
    }
  }
  detail::write_summary(cfg, outcome);
  return outcome;
}

// ---------------------------------------------------------------- curriculum

struct CurriculumCell {
  std::vector<std::vector<EpochReport>> reports;  // per strategy
};

inline CurriculumCell run_curriculum_cell(const ExperimentConfig& cfg, std::uint64_t seed) {
  Rng task_rng = make_rng(seed, kTaskStream);
  const SyntheticTask task = SyntheticTask::generate(cfg.task.params, task_rng);
  ExperimentOptions opts;
  opts.max_epochs = cfg.task.max_epochs;
  if (cfg.task.stop_at_target) opts.stop_at_target = cfg.task.target;
  CurriculumCell cell;
  for (auto strategy : cfg.task.strategies) {
    // Same stream for every strategy: identical schedules see identical noise.
    Rng rng = make_rng(seed, kRunStream);
    cell.reports.push_back(run_experiment(task, strategy, opts, cfg.curriculum, rng));
  }
  return cell;
}

inline RunOutcome run_curriculum(const ExperimentConfig& cfg) {
  const auto& strategies = cfg.task.strategies;
  auto cells = parallel_map(cfg.seeds.size(), detail::workers_for(cfg),
                            [&](std::size_t i) { return run_curriculum_cell(cfg, cfg.seeds[i]); });

  RunOutcome outcome;
  ensure_directory(cfg.out_dir);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::ostringstream csv;
    csv << "epoch,strategy,seed,mean_true_loss,max_true_loss,max_staleness\n";
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      for (const auto& r : cells[i].reports[s]) {
        csv << r.epoch << ',' << to_string(strategies[s]) << ',' << cfg.seeds[i] << ','
            << format_double(r.mean_true_loss) << ',' << format_double(r.max_true_loss) << ','
            << r.max_staleness << '\n';
      }
    }
    const auto path = detail::cell_path(cfg, cfg.seeds[i]);
    write_file(path, csv.str());
    outcome.files.push_back(path);
  }

  auto index_of = [&](Strategy s) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < strategies.size(); ++i) {
      if (strategies[i] == s) return i;
    }
    return std::nullopt;
  };

  nlohmann::json per_strategy = nlohmann::json::object();
  std::vector<std::optional<double>> medians(strategies.size());
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    std::vector<std::optional<std::uint64_t>> ttt;
    nlohmann::json ttt_json = nlohmann::json::array();
    nlohmann::json final_max = nlohmann::json::array();
    std::uint64_t worst_staleness = 0;
    for (const auto& cell : cells) {
      const auto& reports = cell.reports[s];
      ttt.push_back(time_to_target(reports, cfg.task.target));
      ttt_json.push_back(ttt.back() ? nlohmann::json(*ttt.back()) : nlohmann::json(nullptr));
      final_max.push_back(reports.back().max_true_loss);
      for (const auto& r : reports) worst_staleness = std::max(worst_staleness, r.max_staleness);
    }
    medians[s] = detail::median_of(ttt);
    per_strategy[std::string(to_string(strategies[s]))] = {
        {"time_to_target", std::move(ttt_json)},
        {"median_time_to_target", detail::optional_json(medians[s])},
        {"final_max_true_loss", std::move(final_max)},
        {"max_staleness", worst_staleness}};
  }
  outcome.summary["target"] = cfg.task.target;
  outcome.summary["strategies"] = std::move(per_strategy);

  const auto curr = index_of(Strategy::curriculum);
  const auto unif = index_of(Strategy::uniform);
  const auto greedy = index_of(Strategy::greedy_hard_mining);

  if (curr && unif) {
    std::optional<double> ratio;
    if (medians[*curr] && medians[*unif] && *medians[*unif] > 0.0) {
      ratio = *medians[*curr] / *medians[*unif];
    }
    outcome.summary["speedup_ratio"] = detail::optional_json(ratio);
    if (cfg.checks.max_speedup_ratio) {
      outcome.checks.push_back(
          {"speedup_ratio", ratio && *ratio <= *cfg.checks.max_speedup_ratio,
           "median time-to-target ratio curriculum/uniform " +
               (ratio ? format_double(*ratio) : std::string("n/a (target not reached)")) +
               " vs maximum " + format_double(*cfg.checks.max_speedup_ratio)});
    }
  }
  if (curr && greedy) {
    std::size_t wins = 0;
    for (const auto& cell : cells) {
      if (cell.reports[*curr].back().max_true_loss < cell.reports[*greedy].back().max_true_loss) {
        ++wins;
      }
    }
    outcome.summary["forgetting_wins"] = wins;
    if (cfg.checks.min_forgetting_wins) {
      outcome.checks.push_back({"forgetting_wins", wins >= *cfg.checks.min_forgetting_wins,
                                std::to_string(wins) + "/" + std::to_string(cells.size()) +
                                    " seeds with lower final max true loss than greedy"});
    }
  }
  detail::write_summary(cfg, outcome);
  return outcome;
}

// ---------------------------------------------------------------- anchors

struct AnchorStepRow {
  std::uint64_t step = 0;
  ConfidenceWindow window;
  double n_selected = 0.0;
  double mean_confidence = 0.0;
};

/// Sweeps the schedule over one fixed confidence population.
inline std::vector<AnchorStepRow> anchor_sweep(const AnchorSection& a, std::uint64_t seed) {
  Rng pop_rng = make_rng(seed, kTaskStream);
  std::gamma_distribution<double> ga(a.confidence_beta_a, 1.0);
  std::gamma_distribution<double> gb(a.confidence_beta_b, 1.0);
  std::vector<double> conf(a.n_negatives);
  for (double& c : conf) {
    const double x = ga(pop_rng);
    const double y = gb(pop_rng);
    c = x / (x + y);
  }
  const AnchorBatch batch = AnchorBatch::with_sequential_ids(a.n_positives, std::move(conf));

  Rng rng = make_rng(seed, kRunStream);
  std::vector<AnchorStepRow> rows;
  for (std::uint64_t step = 0; step <= a.schedule.total_steps; ++step) {
    AnchorStepRow row;
    row.step = step;
    row.window = thresholds_at(a.schedule, step);
    for (std::size_t r = 0; r < a.repeats; ++r) {
      const auto sel = select_negatives(batch, row.window, a.max_ratio, rng);
      row.n_selected += static_cast<double>(sel.size());
      row.mean_confidence += mean_confidence(batch, sel);
    }
    row.n_selected /= static_cast<double>(a.repeats);
    row.mean_confidence /= static_cast<double>(a.repeats);
    rows.push_back(row);
  }
  return rows;
}

inline RunOutcome run_anchors(const ExperimentConfig& cfg) {
  const auto& a = cfg.anchors;
  auto cells = parallel_map(cfg.seeds.size(), detail::workers_for(cfg),
                            [&](std::size_t i) { return anchor_sweep(a, cfg.seeds[i]); });

  RunOutcome outcome;
  ensure_directory(cfg.out_dir);
  bool monotone = true;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::ostringstream csv;
    csv << "step,xi,eta,n_selected,mean_confidence\n";
    for (std::size_t s = 0; s < cells[i].size(); ++s) {
      const auto& r = cells[i][s];
      csv << r.step << ',' << format_double(r.window.xi) << ',' << format_double(r.window.eta) << ','
          << format_double(r.n_selected) << ',' << format_double(r.mean_confidence) << '\n';
      if (s > 0 && r.mean_confidence > cells[i][s - 1].mean_confidence + 1e-12) monotone = false;
    }
    const auto path = detail::cell_path(cfg, cfg.seeds[i]);
    write_file(path, csv.str());
    outcome.files.push_back(path);
  }

  const auto& sch = a.schedule;
  const auto start = thresholds_at(sch, 0);
  const auto end = thresholds_at(sch, sch.total_steps);
  const bool start_ok = start.xi == sch.xi_start && start.eta == sch.eta_start;
  const bool end_ok = end.xi == 0.0 && end.eta == sch.eta_end;
  // Midpoint of the linear schedule, evaluated at the nearest integer step.
  const std::uint64_t mid_step = sch.total_steps / 2;
  const double f = static_cast<double>(mid_step) / static_cast<double>(sch.total_steps);
  const auto mid = thresholds_at(sch, mid_step);
  const double want_xi = sch.xi_start + f * (0.0 - sch.xi_start);
  const double want_eta = sch.eta_start + f * (sch.eta_end - sch.eta_start);
  const bool mid_ok = std::abs(mid.xi - want_xi) <= 1e-12 && std::abs(mid.eta - want_eta) <= 1e-12;

  outcome.checks.push_back({"schedule_start_exact", start_ok,
                            "(" + format_double(start.xi) + ", " + format_double(start.eta) + ")"});
  outcome.checks.push_back({"schedule_end_exact", end_ok,
                            "(" + format_double(end.xi) + ", " + format_double(end.eta) + ")"});
  outcome.checks.push_back({"schedule_midpoint", mid_ok,
                            "(" + format_double(mid.xi) + ", " + format_double(mid.eta) + ") at step " +
                                std::to_string(mid_step)});
  outcome.checks.push_back({"selected_confidence_nonincreasing", monotone,
                            "mean selected-negative confidence across steps"});
  outcome.summary["schedule"] = {{"xi_start", sch.xi_start},
                                 {"eta_start", sch.eta_start},
                                 {"eta_end", sch.eta_end},
                                 {"total_steps", sch.total_steps}};
  detail::write_summary(cfg, outcome);
  return outcome;
}

// ---------------------------------------------------------------- lemma1

struct Lemma1Cell {
  KsResult raw;
  KsResult rescaled;
};

/// Rewards r_{s,t} = X_{s,t} * gamma^(t-1), X ~ U[0, 1]; compares the early
/// and late strata before and after undoing the decline.
inline Lemma1Cell lemma1_cell(const Lemma1Section& l, std::uint64_t seed) {
  Rng rng = make_rng(seed, kTaskStream);
  const std::vector<double> ratios(l.horizon - 1, l.gamma);
  std::vector<std::vector<double>> rewards(l.sequences, std::vector<double>(l.horizon));
  for (auto& seq : rewards) {
    double decay = 1.0;
    for (std::uint64_t t = 0; t < l.horizon; ++t) {
      seq[t] = uniform01(rng) * decay;
      decay *= l.gamma;
    }
  }
  const auto rescaled = rescale_rewards(rewards, ratios);

  auto stratum = [&](const std::vector<std::vector<double>>& data, std::uint64_t first,
                     std::uint64_t last) {
    std::vector<double> out;
    for (const auto& seq : data) {
      for (std::uint64_t t = first; t <= last; ++t) out.push_back(seq[t - 1]);
    }
    return out;
  };
  Lemma1Cell cell;
  cell.raw = ks_two_sample(stratum(rewards, l.early_first, l.early_last),
                           stratum(rewards, l.late_first, l.late_last));
  cell.rescaled = ks_two_sample(stratum(rescaled, l.early_first, l.early_last),
                                stratum(rescaled, l.late_first, l.late_last));
  return cell;
}

inline RunOutcome run_lemma1(const ExperimentConfig& cfg) {
  const auto& l = cfg.lemma1;
  auto cells = parallel_map(cfg.seeds.size(), detail::workers_for(cfg),
                            [&](std::size_t i) { return lemma1_cell(l, cfg.seeds[i]); });
  RunOutcome outcome;
  ensure_directory(cfg.out_dir);
  bool rescaled_ok = true;
  bool raw_rejected = true;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto seed = cfg.seeds[i];
    std::ostringstream csv;
    csv << "seed,series,statistic,p_value\n";
    csv << seed << ",raw," << format_double(cells[i].raw.statistic) << ','
        << format_double(cells[i].raw.p_value) << '\n';
    csv << seed << ",rescaled," << format_double(cells[i].rescaled.statistic) << ','
        << format_double(cells[i].rescaled.p_value) << '\n';
    const auto path = detail::cell_path(cfg, seed);
    write_file(path, csv.str());
    outcome.files.push_back(path);
    rescaled_ok = rescaled_ok && cells[i].rescaled.p_value > l.significance;
    raw_rejected = raw_rejected && cells[i].raw.p_value < l.significance;
    rows.push_back({{"seed", seed},
                    {"raw_statistic", cells[i].raw.statistic},
                    {"raw_p_value", cells[i].raw.p_value},
                    {"rescaled_statistic", cells[i].rescaled.statistic},
                    {"rescaled_p_value", cells[i].rescaled.p_value}});
  }
  outcome.summary["ks"] = std::move(rows);
  outcome.summary["gamma"] = l.gamma;
  outcome.checks.push_back({"rescaled_stationary", rescaled_ok,
                            "rescaled strata KS p > " + format_double(l.significance)});
  outcome.checks.push_back({"raw_nonstationary", raw_rejected,
                            "raw strata KS p < " + format_double(l.significance)});
  detail::write_summary(cfg, outcome);
  return outcome;
}

// ---------------------------------------------------------------- checkpoint

/// Sampler session against the synthetic task, recorded as an operation
/// log. Every next_epoch carries its own seed so the log alone replays it.
inline std::pair<SamplerRegistry, std::vector<SessionOp>> record_session(const ExperimentConfig& cfg,
                                                                          std::uint64_t seed) {
  Rng task_rng = make_rng(seed, kTaskStream);
  SyntheticTask task = SyntheticTask::generate(cfg.task.params, task_rng);
  SamplerRegistry registry(task.size(), cfg.curriculum);
  Rng seeds = make_rng(seed, kSessionSeedStream);
  Rng noise = make_rng(seed, kSessionNoiseStream);
  std::vector<SessionOp> ops;
  for (std::size_t e = 0; e < cfg.checkpoint.epochs; ++e) {
    ops.emplace_back(NextEpochOp{seeds()});
    const auto batches = apply_session_op(registry, ops.back());
    for (const auto& batch : batches) {
      ReportLossesOp report;
      for (SampleId id : batch) report.pairs.emplace_back(id, task.observe_loss(id, noise));
      ops.emplace_back(std::move(report));
      apply_session_op(registry, ops.back());
    }
    task.end_epoch();
  }
  return {std::move(registry), std::move(ops)};
}

enum class CheckpointAction { dump, replay, restore };

struct CheckpointRequest {
  CheckpointAction action = CheckpointAction::dump;
  std::filesystem::path input;  // checkpoint for restore
  std::filesystem::path log;    // operation log for replay / restore
};

inline RunOutcome run_checkpoint(const ExperimentConfig& cfg, const CheckpointRequest& req) {
  RunOutcome outcome;
  ensure_directory(cfg.out_dir);
  auto read_log = [&]() {
    std::istringstream in(read_file(req.log));
    return read_session_log(in);
  };

  switch (req.action) {
    case CheckpointAction::dump: {
      for (auto seed : cfg.seeds) {
        auto [registry, ops] = record_session(cfg, seed);
        const auto ckpt = detail::cell_path(cfg, seed, ".json");
        write_file(ckpt, dump_checkpoint(registry));
        std::string log;
        for (const auto& op : ops) log += format_session_op(op) + "\n";
        const auto log_path = detail::cell_path(cfg, seed, ".ops.jsonl");
        write_file(log_path, log);
        outcome.files.push_back(ckpt);
        outcome.files.push_back(log_path);
      }
      break;
    }
    case CheckpointAction::replay: {
      if (req.log.empty()) throw ValidationError("--log: required for replay");
      SamplerRegistry registry(cfg.task.params.n_samples, cfg.curriculum);
      replay_session(registry, read_log());
      const auto path = cfg.out_dir / (cfg.name + "-replay.json");
      write_file(path, dump_checkpoint(registry));
      outcome.files.push_back(path);
      break;
    }
    case CheckpointAction::restore: {
      if (req.input.empty()) throw ValidationError("--in: required for restore");
      SamplerRegistry registry = load_checkpoint(read_file(req.input));
      if (!req.log.empty()) replay_session(registry, read_log());
      const auto path = cfg.out_dir / (cfg.name + "-restored.json");
      write_file(path, dump_checkpoint(registry));
      outcome.files.push_back(path);
      break;
    }
  }
  return outcome;
}

inline RunOutcome run_experiment_config(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::bandit: return run_bandit(cfg);
    case ExperimentKind::curriculum: return run_curriculum(cfg);
    case ExperimentKind::anchors: return run_anchors(cfg);
    case ExperimentKind::lemma1: return run_lemma1(cfg);
    case ExperimentKind::checkpoint: return run_checkpoint(cfg, {});
  }
  return {};
}

}  // namespace cursamp::cli
