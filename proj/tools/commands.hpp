#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "otslab/config.hpp"

namespace otslab::cli {

// Exit codes shared by every command.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kRuntimeError = 2;
inline constexpr int kAuditViolations = 3;

struct SimulateArgs {
  std::string config_path;
  std::optional<std::string> trace_out;  // overrides config output.trace
  std::optional<std::string> svg_out;    // overrides config output.svg
  /// Batch mode: run every seed in [first, second] concurrently; output
  /// files get a ".seedN" suffix and the summaries are merged.
  std::optional<std::pair<uint64_t, uint64_t>> seeds;
};

struct FairnessArgs {
  std::optional<std::string> trace_path;   // either a trace...
  std::optional<std::string> config_path;  // ...or a config (+ horizon);
                                           // alongside a trace it supplies
                                           // the alphabet
  std::optional<size_t> horizon;
  std::optional<int> multi_m;
  std::optional<size_t> multi_k;
  std::optional<size_t> density_g;
  std::optional<std::string> out_path;  // JSON report; default stdout
};

struct VerifyArgs {
  std::string config_path;
  /// Delta computations enumerate all simple paths (worst case exponential
  /// in the agent count); graphs above this cap skip the recurrence scan.
  int delta_agent_cap = 12;
};

struct ReproduceArgs {
  std::string figure_id;
  std::string out_dir;
};

/// OTSLAB_SEED, when set, overrides the config seed (and any scheduler
/// seed) for all commands.
void apply_env_seed(ExperimentConfig& config);

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_fairness(const FairnessArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_reproduce(const ReproduceArgs& args, std::ostream& out, std::ostream& err);

}  // namespace otslab::cli
