// Experiment runner for the curriculum sampler, bandit lab and anchor schedule.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cursamp/cli/experiment_config.hpp"
#include "cursamp/cli/output.hpp"
#include "cursamp/cli/runners.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitAcceptance = 2;
constexpr int kExitIo = 3;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool check = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "experiment config (TOML)")->required();
  cmd->add_option("--seed", flags.seed, "run this single seed instead of the configured list");
  cmd->add_option("--out", flags.out, "output directory (overrides experiment.out_dir)");
  cmd->add_flag("--check", flags.check, "exit 2 if any acceptance check fails");
}

cursamp::cli::ExperimentConfig load(const CommonFlags& flags) {
  const auto text = cursamp::cli::read_file(flags.config);
  auto cfg = cursamp::cli::parse_config_text(text, flags.config);
  if (flags.seed) cfg.seeds = {*flags.seed};
  if (flags.out) cfg.out_dir = *flags.out;
  return cfg;
}

int report(const cursamp::cli::RunOutcome& outcome, bool check) {
  for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << '\n';
  for (const auto& c : outcome.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  return check && !outcome.all_passed() ? kExitAcceptance : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cursamp::cli;

  CLI::App app{"cursamp: curriculum sampling experiments"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::optional<ExperimentKind> forced;
  auto* run = app.add_subcommand("run", "run the experiment named by experiment.kind");
  add_common(run, flags);
  for (auto kind : {ExperimentKind::bandit, ExperimentKind::curriculum, ExperimentKind::anchors,
                    ExperimentKind::lemma1}) {
    auto* sub = app.add_subcommand(std::string(to_string(kind)),
                                   "run a " + std::string(to_string(kind)) + " experiment");
    add_common(sub, flags);
    sub->callback([&forced, kind] { forced = kind; });
  }

  CheckpointRequest ckpt;
  std::string action = "dump";
  std::string ckpt_in;
  std::string ckpt_log;
  auto* checkpoint = app.add_subcommand("checkpoint", "dump, replay or restore sampler registry JSON");
  add_common(checkpoint, flags);
  checkpoint->add_option("action", action, "dump | replay | restore")
      ->check(CLI::IsMember({"dump", "replay", "restore"}));
  checkpoint->add_option("--in", ckpt_in, "checkpoint to restore");
  checkpoint->add_option("--log", ckpt_log, "operation log (JSON lines) to replay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    auto cfg = load(flags);
    if (checkpoint->parsed()) {
      ckpt.action = action == "replay"    ? CheckpointAction::replay
                    : action == "restore" ? CheckpointAction::restore
                                          : CheckpointAction::dump;
      ckpt.input = ckpt_in;
      ckpt.log = ckpt_log;
      return report(run_checkpoint(cfg, ckpt), flags.check);
    }
    if (forced && cfg.kind != *forced) {
      throw cursamp::ValidationError("experiment.kind: config is '" + std::string(to_string(cfg.kind)) +
                                     "' but subcommand is '" + std::string(to_string(*forced)) + "'");
    }
    return report(run_experiment_config(cfg), flags.check);
  } catch (const cursamp::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const cursamp::LookupError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
}
