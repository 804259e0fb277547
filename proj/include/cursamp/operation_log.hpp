#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cursamp/errors.hpp"
#include "cursamp/random.hpp"
#include "cursamp/sampler_registry.hpp"

namespace cursamp {

// A scheduler session as a sequence of operations, one JSON object per line:
//   {"op":"next_epoch","seed":17}
//   {"op":"report_losses","pairs":[[3,0.41],[9,1.2]]}
// Replaying a log against a registry reproduces the session exactly.

struct NextEpochOp {
  std::uint64_t seed = 0;
};

struct ReportLossesOp {
  std::vector<std::pair<SampleId, double>> pairs;
};

using SessionOp = std::variant<NextEpochOp, ReportLossesOp>;

inline SessionOp parse_session_op(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    const auto op = j.at("op").get<std::string>();
    if (op == "next_epoch") {
      return NextEpochOp{j.at("seed").get<std::uint64_t>()};
    }
    if (op == "report_losses") {
      ReportLossesOp r;
      for (const auto& p : j.at("pairs")) {
        r.pairs.emplace_back(p.at(0).get<SampleId>(), p.at(1).get<double>());
      }
      return r;
    }
    throw ValidationError("op: unknown operation '" + op + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("op: ") + e.what());
  }
}

inline std::vector<SessionOp> read_session_log(std::istream& in) {
  std::vector<SessionOp> ops;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ops.push_back(parse_session_op(line));
  }
  return ops;
}

inline std::string format_session_op(const SessionOp& op) {
  nlohmann::json j;
  if (const auto* n = std::get_if<NextEpochOp>(&op)) {
    j = {{"op", "next_epoch"}, {"seed", n->seed}};
  } else {
    const auto& r = std::get<ReportLossesOp>(op);
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [id, loss] : r.pairs) pairs.push_back({id, loss});
    j = {{"op", "report_losses"}, {"pairs", std::move(pairs)}};
  }
  return j.dump();
}

/// Applies one operation; next_epoch seeds a fresh engine from its seed.
inline std::vector<Batch> apply_session_op(SamplerRegistry& registry, const SessionOp& op) {
  if (const auto* n = std::get_if<NextEpochOp>(&op)) {
    Rng rng = make_rng(n->seed);
    return next_epoch(registry, rng).batches;
  }
  registry.record_losses(std::get<ReportLossesOp>(op).pairs);
  return {};
}

inline void replay_session(SamplerRegistry& registry, const std::vector<SessionOp>& ops) {
  for (const auto& op : ops) apply_session_op(registry, op);
}

}  // namespace cursamp
