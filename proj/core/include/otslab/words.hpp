#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "otslab/dynamics.hpp"
#include "otslab/fairness.hpp"
#include "otslab/graph.hpp"

namespace otslab {

/// Produces the action word of a run, one edge per call. State-feedback
/// schedulers read the current opinion state; the run executor passes it
/// in on every call. Single-owner mutable; distinct instances may run in
/// parallel.
class Scheduler {
 public:
  virtual ~Scheduler() = default;

  /// Next action as an edge index of the attached graph. May throw when a
  /// feedback loop exceeds its guard.
  virtual int next(const OpinionState& current) = 0;

  /// Analytic fairness classification of the full infinite word this
  /// generator produces (advisory; see FairnessTag).
  virtual FairnessTag tag() const { return FairnessTag::unknown(); }

  virtual std::string describe() const = 0;
};

using SchedulerPtr = std::unique_ptr<Scheduler>;

/// Repeats `pattern` forever. When the pattern covers every edge the tag
/// is k_fair with the least k for which all cyclic k-windows are complete;
/// otherwise the word is not even strongly fair and the tag is unknown.
SchedulerPtr periodic_scheduler(const InfluenceGraph& graph,
                                const std::vector<std::string>& pattern);
SchedulerPtr periodic_scheduler_indices(const InfluenceGraph& graph,
                                        std::vector<int> pattern);

/// I.i.d. draws from the normalized distribution. `probabilities` must
/// assign a strictly positive mass to every edge label; pass an empty map
/// for uniform. Tagged m-bounded fair almost surely (statistical claim,
/// reported at the consensus-relevant m = n-1).
SchedulerPtr random_scheduler(const InfluenceGraph& graph,
                              const std::map<std::string, double>& probabilities,
                              uint64_t seed);

/// Strongly fair non-consensus process for the two-pole three-agent graph
/// (labels a,b,c,d with a:1->2, b:2->1, c:3->2, d:2->3, 1-based). Emits
/// a while B2 >= lower (at least one), then b, then c while B2 <= upper
/// (at least one), then d, forever: word shape (a+ b c+ d)^omega. The
/// initial state must satisfy B1 < lower < B2 < upper < B3. Each feedback
/// loop must finish within `guard` emissions or next() throws.
SchedulerPtr shuttle_scheduler(const InfluenceGraph& graph, double lower,
                               double upper, uint64_t guard = 1000000);

/// 1-bounded-fair non-consensus process for the four-agent chain (labels
/// a:1->2, b:2->1, c:3->2, d:2->3, e:4->3, f:3->4). Emits the complete
/// block bfdace, then a while B2 >= lower (possibly none), then e while
/// B3 <= upper (possibly none), forever: word shape (bfdace a* e*)^omega.
/// The initial state must satisfy B1 < B2 <= lower < upper <= B3 < B4.
SchedulerPtr window_shuttle_scheduler(const InfluenceGraph& graph, double lower,
                                      double upper, uint64_t guard = 1000000);

/// Machine-closure extension: emits `prefix`, then cycles all edges in
/// label order forever. Tagged bounded_fair(|prefix| + |E|).
SchedulerPtr extend_scheduler(const InfluenceGraph& graph,
                              const std::vector<std::string>& prefix);

/// Growing blocks a^n b c^n d for n = start_n, start_n+1, ... on the
/// two-pole three-agent graph. Strongly fair but with unbounded gaps.
SchedulerPtr growing_block_scheduler(const InfluenceGraph& graph, int start_n = 1);

/// A move extends the word so far by a finite nonempty edge sequence.
using GameStrategy = std::function<std::vector<int>(const std::vector<int>& word)>;

struct GameRound {
  int round = 0;
  size_t opponent_added = 0;
  size_t scheduler_added = 0;
  size_t multiwindow_hits = 0;  // complete (m,k) multi-window starts so far
};

struct GameResult {
  std::vector<int> word;
  std::vector<GameRound> rounds;
};

/// Alternating word-building game: the opponent moves first, then the
/// scheduler, for `rounds` rounds. After each round the word so far is
/// scanned for complete (m,k) multi-windows. A strategy returning an empty
/// or out-of-graph extension is an error.
GameResult banach_mazur_game(const InfluenceGraph& graph,
                             const GameStrategy& scheduler_strategy,
                             const GameStrategy& opponent_strategy, int rounds,
                             int m, size_t k);

/// Opponent playing label^r on its r-th turn (r = 1,2,...).
GameStrategy flood_opponent(const InfluenceGraph& graph, const std::string& label);

/// Opponent playing a single fixed edge every turn.
GameStrategy single_edge_opponent(const InfluenceGraph& graph,
                                  const std::string& label);

/// Scheduler appending one complete (m,k) multi-window per turn (edges in
/// label order, padded with the first edge up to window length k).
GameStrategy multiwindow_strategy(const InfluenceGraph& graph, int m, size_t k);

/// Materializes the next `length` actions of a scheduler that never reads
/// the state (periodic, extend, growing-block, random).
std::vector<int> take_word(Scheduler& scheduler, size_t length);

}  // namespace otslab
