#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otslab/dynamics.hpp"
#include "otslab/graph.hpp"
#include "otslab/words.hpp"

namespace otslab {

/// Materialized finite prefix of a run. states[t] is the state after the
/// (t+1)-th action; max_seq/min_seq have length steps()+1 and include the
/// initial state. Construction asserts the extremal bounds and the
/// monotonicity of the extremes on every transition.
struct RunTrace {
  OpinionState initial;
  std::vector<int> actions;
  std::vector<double> influences;
  std::vector<OpinionState> states;
  std::vector<double> max_seq;
  std::vector<double> min_seq;

  size_t steps() const { return actions.size(); }
  const OpinionState& state_at(size_t t) const {
    return t == 0 ? initial : states[t - 1];
  }
};

struct ConvergenceReport {
  double u_hat = 0.0;  // final maximum
  double l_hat = 0.0;  // final minimum
  double gap = 0.0;
  double tolerance = 0.0;
  bool consensus = false;
  std::vector<std::pair<size_t, double>> gap_series;  // sampled (t, gap)
};

/// Runs `steps` transitions, querying the scheduler with the current state
/// before each one. Propagates scheduler guard errors; an extremal-bound
/// or monotonicity violation aborts with a diagnostic (implementation bug).
RunTrace execute(const InfluenceGraph& graph, const OpinionState& initial,
                 const InfluenceFunction& influence, Scheduler& scheduler,
                 size_t steps);

/// Streaming variant for long horizons: same run, no state storage.
/// `sample_stride` controls the gap series (0 = automatic).
ConvergenceReport run_summary(const InfluenceGraph& graph, const OpinionState& initial,
                              const InfluenceFunction& influence, Scheduler& scheduler,
                              size_t steps, double tolerance,
                              size_t sample_stride = 0);

/// Final extremes of a trace; consensus iff gap < tolerance (valid because
/// the extremes are monotone).
ConvergenceReport convergence(const RunTrace& trace, double tolerance);

/// Length of the smallest word prefix containing the path's edge sequence
/// as a subsequence; nullopt when the word prefix never completes it.
std::optional<size_t> delta_of_path(const std::vector<int>& word, const GPath& path);

/// max over all simple paths starting at `agent` of delta_of_path; nullopt
/// when some path is not contained in the word prefix. Meaningful for
/// strongly connected graphs, where the paths reach every agent.
std::optional<size_t> delta_of_agent(const std::vector<int>& word,
                                     const InfluenceGraph& graph, AgentId agent);

/// Least agent holding the minimum opinion.
AgentId min_opinion_agent(const OpinionState& state);

/// Samples suffix starts every `stride` steps; reports each start t where
/// the minimum-opinion agent of B^t influences everyone within `beta`
/// suffix actions (delta over the suffix word <= beta). A hit list that
/// keeps growing across the horizon is the finite-horizon evidence of a
/// recurrent bound.
std::vector<size_t> delta_bound_scan(const RunTrace& trace,
                                     const InfluenceGraph& graph, size_t beta,
                                     size_t stride = 100);

struct AuditEntry {
  std::string name;
  size_t checks = 0;
  size_t violations = 0;
  double worst_excess = 0.0;  // largest amount by which a bound was missed
};

struct AuditReport {
  std::vector<AuditEntry> entries;

  size_t total_violations() const;
  const AuditEntry& entry(const std::string& name) const;
};

struct AuditOptions {
  double slack = 1e-12;
  size_t suffix_stride = 0;   // 0 = automatic (about 64 sampled suffixes)
  size_t path_budget = 10000; // max (suffix, path) pairs for the path bound
  uint64_t seed = 2024;       // path sampling
  /// Influence range used in the bounds; defaults to the graph extrema
  /// (static case). Bounded dynamic runs pass their scaling interval.
  std::optional<std::pair<double, double>> rate_bounds;
};

/// Evaluates every inequality the run theory guarantees on an executed
/// trace: per-transition extremal bounds, the one-step/n-step/direct/path
/// upper bounds, and the network spread bound via delta. Reports, never
/// throws; a correct engine yields zero violations up to `slack`.
AuditReport audit_bounds(const RunTrace& trace, const InfluenceGraph& graph,
                         const AuditOptions& options = {});

struct DecrementCheck {
  size_t suffix_start = 0;
  double decrement = 0.0;  // max(B^t) - max(B^{t+beta})
  double epsilon = 0.0;    // guaranteed lower bound
};

/// For each suffix start where `beta` bounds the minimum-opinion agent's
/// delta, the guaranteed decrement of the running maximum:
/// epsilon = rate_min^n (1-rate_max)^beta (U-L). U/L are estimated from
/// the trace tail by the caller, making the check conservative.
std::vector<DecrementCheck> epsilon_decrement(const RunTrace& trace,
                                              const InfluenceGraph& graph,
                                              size_t beta, double u_limit,
                                              double l_limit,
                                              const AuditOptions& options = {});

/// Least number of consecutive executions of an edge with influence 1/2
/// pulling opinion b_i toward b_j needed to reach at least `target`:
/// ceil(log2((b_j - b_i) / (b_j - target))). Requires b_i < target < b_j.
int min_effort(double b_i, double b_j, double target);

/// Per-block counts of action "c" in a word of shape (a+ b c+ d)^omega
/// (as produced by the shuttle scheduler); the trailing partial block is
/// dropped. Rejects words of any other shape.
std::vector<size_t> shuttle_block_c_counts(const std::vector<int>& actions,
                                           const InfluenceGraph& graph);

}  // namespace otslab
