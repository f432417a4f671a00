#include "otslab/words.hpp"

#include <algorithm>
#include <stdexcept>

#include "otslab/rng.hpp"

namespace otslab {

namespace {

int require_edge(const InfluenceGraph& graph, const std::string& label) {
  const auto e = graph.edge_by_label(label);
  if (!e) throw std::invalid_argument("scheduler: unknown action '" + label + "'");
  return *e;
}

void require_endpoints(const InfluenceGraph& graph, const std::string& label,
                       AgentId from, AgentId to) {
  const int e = require_edge(graph, label);
  const Edge& edge = graph.edge(e);
  if (edge.from != from || edge.to != to) {
    throw std::invalid_argument("scheduler: action '" + label +
                                "' does not connect the expected agents");
  }
}

// Least k such that every cyclic k-window of the pattern is complete, or
// nullopt when the pattern misses some edge.
std::optional<size_t> cyclic_uniform_k(const std::vector<int>& pattern,
                                       int alphabet_size) {
  const size_t p = pattern.size();
  std::vector<std::vector<size_t>> positions(static_cast<size_t>(alphabet_size));
  for (size_t i = 0; i < p; ++i) {
    positions[static_cast<size_t>(pattern[i])].push_back(i);
  }
  size_t k = 0;
  for (const auto& pos : positions) {
    if (pos.empty()) return std::nullopt;
    size_t stretch = pos.front() + p - pos.back() - 1;  // wrap-around
    for (size_t t = 1; t < pos.size(); ++t) {
      stretch = std::max(stretch, pos[t] - pos[t - 1] - 1);
    }
    k = std::max(k, stretch + 1);
  }
  return k;
}

class PeriodicScheduler final : public Scheduler {
 public:
  PeriodicScheduler(const InfluenceGraph& graph, std::vector<int> pattern)
      : graph_(&graph), pattern_(std::move(pattern)) {
    if (pattern_.empty()) {
      throw std::invalid_argument("periodic scheduler: empty pattern");
    }
    for (int e : pattern_) {
      if (e < 0 || e >= graph.edge_count()) {
        throw std::invalid_argument("periodic scheduler: edge outside graph");
      }
    }
    if (const auto k = cyclic_uniform_k(pattern_, graph.edge_count())) {
      tag_ = FairnessTag::k_fair(*k);
    } else {
      tag_ = FairnessTag::unfair();  // some edge never occurs
    }
  }

  int next(const OpinionState&) override {
    const int e = pattern_[cursor_];
    cursor_ = (cursor_ + 1) % pattern_.size();
    return e;
  }

  FairnessTag tag() const override { return tag_; }

  std::string describe() const override {
    std::string out = "periodic(";
    for (size_t i = 0; i < pattern_.size() && i < 16; ++i) {
      out += graph_->edge(pattern_[i]).label;
    }
    if (pattern_.size() > 16) out += "...";
    return out + ")";
  }

 private:
  const InfluenceGraph* graph_;
  std::vector<int> pattern_;
  size_t cursor_ = 0;
  FairnessTag tag_ = FairnessTag::unknown();
};

class RandomScheduler final : public Scheduler {
 public:
  RandomScheduler(const InfluenceGraph& graph,
                  const std::map<std::string, double>& probabilities, uint64_t seed)
      : graph_(&graph), rng_(seed), seed_(seed) {
    if (graph.edge_count() == 0) {
      throw std::invalid_argument("random scheduler: graph has no edges");
    }
    std::vector<double> mass(static_cast<size_t>(graph.edge_count()), 1.0);
    if (!probabilities.empty()) {
      for (const auto& [label, p] : probabilities) {
        const int e = require_edge(graph, label);
        if (!(p > 0.0)) {
          throw std::invalid_argument("random scheduler: probability for '" + label +
                                      "' must be positive");
        }
        mass[static_cast<size_t>(e)] = p;
      }
      if (probabilities.size() != static_cast<size_t>(graph.edge_count())) {
        throw std::invalid_argument(
            "random scheduler: every edge needs a positive probability");
      }
    }
    cumulative_.resize(mass.size());
    double acc = 0.0;
    for (size_t i = 0; i < mass.size(); ++i) {
      acc += mass[i];
      cumulative_[i] = acc;
    }
  }

  int next(const OpinionState&) override {
    return static_cast<int>(rng_.pick_cumulative(cumulative_));
  }

  FairnessTag tag() const override {
    return FairnessTag::m_bounded_fair(graph_->agent_count() - 1, true);
  }

  std::string describe() const override {
    return "random(seed=" + std::to_string(seed_) + ")";
  }

 private:
  const InfluenceGraph* graph_;
  Rng rng_;
  uint64_t seed_;
  std::vector<double> cumulative_;
};

// Two-pole feedback process: starve d by shuttling agent 2 between the
// poles. Shape (a+ b c+ d)^omega.
class ShuttleScheduler final : public Scheduler {
 public:
  ShuttleScheduler(const InfluenceGraph& graph, double lower, double upper,
                   uint64_t guard)
      : lower_(lower), upper_(upper), guard_(guard) {
    if (!(lower > 0.0 && lower < upper && upper < 1.0)) {
      throw std::invalid_argument("shuttle scheduler: need 0 < lower < upper < 1");
    }
    if (graph.agent_count() != 3) {
      throw std::invalid_argument("shuttle scheduler: needs the 3-agent graph");
    }
    require_endpoints(graph, "a", 0, 1);
    require_endpoints(graph, "b", 1, 0);
    require_endpoints(graph, "c", 2, 1);
    require_endpoints(graph, "d", 1, 2);
    a_ = *graph.edge_by_label("a");
    b_ = *graph.edge_by_label("b");
    c_ = *graph.edge_by_label("c");
    d_ = *graph.edge_by_label("d");
  }

  int next(const OpinionState& state) override {
    if (!started_) {
      if (state.size() != 3 ||
          !(state[0] < lower_ && lower_ < state[1] && state[1] < upper_ &&
            upper_ < state[2])) {
        throw std::invalid_argument(
            "shuttle scheduler: initial state must satisfy B1 < L < B2 < U < B3");
      }
      started_ = true;
    }
    while (true) {
      switch (phase_) {
        case Phase::pull_down:
          if (emitted_ == 0 || state[1] >= lower_) {
            bump_guard();
            ++emitted_;
            return a_;
          }
          phase_ = Phase::refresh_low;
          continue;
        case Phase::refresh_low:
          phase_ = Phase::pull_up;
          emitted_ = 0;
          loop_count_ = 0;
          return b_;
        case Phase::pull_up:
          if (emitted_ == 0 || state[1] <= upper_) {
            bump_guard();
            ++emitted_;
            return c_;
          }
          phase_ = Phase::refresh_high;
          continue;
        case Phase::refresh_high:
          phase_ = Phase::pull_down;
          emitted_ = 0;
          loop_count_ = 0;
          return d_;
      }
    }
  }

  FairnessTag tag() const override { return FairnessTag::strongly_fair(); }

  std::string describe() const override {
    return "shuttle(L=" + std::to_string(lower_) + ",U=" + std::to_string(upper_) + ")";
  }

 private:
  enum class Phase { pull_down, refresh_low, pull_up, refresh_high };

  void bump_guard() {
    if (++loop_count_ > guard_) {
      throw std::runtime_error(
          "counter-example loop did not terminate within guard");
    }
  }

  double lower_, upper_;
  uint64_t guard_;
  int a_ = 0, b_ = 0, c_ = 0, d_ = 0;
  Phase phase_ = Phase::pull_down;
  uint64_t emitted_ = 0;
  uint64_t loop_count_ = 0;
  bool started_ = false;
};

// Four-agent variant opening every iteration with the complete block
// bfdace. Shape (bfdace a* e*)^omega.
class WindowShuttleScheduler final : public Scheduler {
 public:
  WindowShuttleScheduler(const InfluenceGraph& graph, double lower, double upper,
                         uint64_t guard)
      : lower_(lower), upper_(upper), guard_(guard) {
    if (!(lower > 0.0 && lower < upper && upper < 1.0)) {
      throw std::invalid_argument(
          "window shuttle scheduler: need 0 < lower < upper < 1");
    }
    if (graph.agent_count() != 4) {
      throw std::invalid_argument("window shuttle scheduler: needs the 4-agent graph");
    }
    require_endpoints(graph, "a", 0, 1);
    require_endpoints(graph, "b", 1, 0);
    require_endpoints(graph, "c", 2, 1);
    require_endpoints(graph, "d", 1, 2);
    require_endpoints(graph, "e", 3, 2);
    require_endpoints(graph, "f", 2, 3);
    for (const char* label : {"b", "f", "d", "a", "c", "e"}) {
      block_.push_back(*graph.edge_by_label(label));
    }
    a_ = *graph.edge_by_label("a");
    e_ = *graph.edge_by_label("e");
  }

  int next(const OpinionState& state) override {
    if (!started_) {
      if (state.size() != 4 ||
          !(state[0] < state[1] && state[1] <= lower_ && lower_ < upper_ &&
            upper_ <= state[2] && state[2] < state[3])) {
        throw std::invalid_argument(
            "window shuttle scheduler: initial state must satisfy "
            "B1 < B2 <= L < U <= B3 < B4");
      }
      started_ = true;
    }
    while (true) {
      switch (phase_) {
        case Phase::block:
          if (block_pos_ < block_.size()) return block_[block_pos_++];
          phase_ = Phase::pull_down;
          loop_count_ = 0;
          continue;
        case Phase::pull_down:
          if (state[1] >= lower_) {
            bump_guard();
            return a_;
          }
          phase_ = Phase::pull_up;
          loop_count_ = 0;
          continue;
        case Phase::pull_up:
          if (state[2] <= upper_) {
            bump_guard();
            return e_;
          }
          phase_ = Phase::block;
          block_pos_ = 0;
          continue;
      }
    }
  }

  FairnessTag tag() const override { return FairnessTag::m_bounded_fair(1); }

  std::string describe() const override {
    return "window_shuttle(L=" + std::to_string(lower_) +
           ",U=" + std::to_string(upper_) + ")";
  }

 private:
  enum class Phase { block, pull_down, pull_up };

  void bump_guard() {
    if (++loop_count_ > guard_) {
      throw std::runtime_error(
          "counter-example loop did not terminate within guard");
    }
  }

  double lower_, upper_;
  uint64_t guard_;
  std::vector<int> block_;
  int a_ = 0, e_ = 0;
  Phase phase_ = Phase::block;
  size_t block_pos_ = 0;
  uint64_t loop_count_ = 0;
  bool started_ = false;
};

std::vector<int> edges_in_label_order(const InfluenceGraph& graph) {
  std::vector<int> order(static_cast<size_t>(graph.edge_count()));
  for (int e = 0; e < graph.edge_count(); ++e) order[static_cast<size_t>(e)] = e;
  std::sort(order.begin(), order.end(), [&graph](int lhs, int rhs) {
    return graph.edge(lhs).label < graph.edge(rhs).label;
  });
  return order;
}

class ExtendScheduler final : public Scheduler {
 public:
  ExtendScheduler(const InfluenceGraph& graph, const std::vector<std::string>& prefix)
      : cycle_(edges_in_label_order(graph)) {
    for (const auto& label : prefix) prefix_.push_back(require_edge(graph, label));
    tag_ = FairnessTag::bounded_fair(prefix_.size() + cycle_.size());
  }

  int next(const OpinionState&) override {
    if (pos_ < prefix_.size()) return prefix_[pos_++];
    const int e = cycle_[(pos_ - prefix_.size()) % cycle_.size()];
    ++pos_;
    return e;
  }

  FairnessTag tag() const override { return tag_; }

  std::string describe() const override {
    return "extend(prefix_len=" + std::to_string(prefix_.size()) + ")";
  }

 private:
  std::vector<int> prefix_;
  std::vector<int> cycle_;
  size_t pos_ = 0;
  FairnessTag tag_;
};

// a^n b c^n d with n growing by one each block.
class GrowingBlockScheduler final : public Scheduler {
 public:
  GrowingBlockScheduler(const InfluenceGraph& graph, int start_n) : n_(start_n) {
    if (start_n < 1) {
      throw std::invalid_argument("growing block scheduler: start_n >= 1");
    }
    a_ = require_edge(graph, "a");
    b_ = require_edge(graph, "b");
    c_ = require_edge(graph, "c");
    d_ = require_edge(graph, "d");
  }

  int next(const OpinionState&) override {
    const uint64_t block_len = 2 * static_cast<uint64_t>(n_) + 2;
    int out;
    if (pos_ < static_cast<uint64_t>(n_)) {
      out = a_;
    } else if (pos_ == static_cast<uint64_t>(n_)) {
      out = b_;
    } else if (pos_ < block_len - 1) {
      out = c_;
    } else {
      out = d_;
    }
    if (++pos_ == block_len) {
      pos_ = 0;
      ++n_;
    }
    return out;
  }

  FairnessTag tag() const override { return FairnessTag::strongly_fair(); }

  std::string describe() const override {
    return "growing_blocks(start=" + std::to_string(n_) + ")";
  }

 private:
  int a_ = 0, b_ = 0, c_ = 0, d_ = 0;
  int n_;
  uint64_t pos_ = 0;
};

}  // namespace

SchedulerPtr periodic_scheduler(const InfluenceGraph& graph,
                                const std::vector<std::string>& pattern) {
  std::vector<int> indices;
  indices.reserve(pattern.size());
  for (const auto& label : pattern) indices.push_back(require_edge(graph, label));
  return std::make_unique<PeriodicScheduler>(graph, std::move(indices));
}

SchedulerPtr periodic_scheduler_indices(const InfluenceGraph& graph,
                                        std::vector<int> pattern) {
  return std::make_unique<PeriodicScheduler>(graph, std::move(pattern));
}

SchedulerPtr random_scheduler(const InfluenceGraph& graph,
                              const std::map<std::string, double>& probabilities,
                              uint64_t seed) {
  return std::make_unique<RandomScheduler>(graph, probabilities, seed);
}

SchedulerPtr shuttle_scheduler(const InfluenceGraph& graph, double lower,
                               double upper, uint64_t guard) {
  return std::make_unique<ShuttleScheduler>(graph, lower, upper, guard);
}

SchedulerPtr window_shuttle_scheduler(const InfluenceGraph& graph, double lower,
                                      double upper, uint64_t guard) {
  return std::make_unique<WindowShuttleScheduler>(graph, lower, upper, guard);
}

SchedulerPtr extend_scheduler(const InfluenceGraph& graph,
                              const std::vector<std::string>& prefix) {
  return std::make_unique<ExtendScheduler>(graph, prefix);
}

SchedulerPtr growing_block_scheduler(const InfluenceGraph& graph, int start_n) {
  return std::make_unique<GrowingBlockScheduler>(graph, start_n);
}

GameResult banach_mazur_game(const InfluenceGraph& graph,
                             const GameStrategy& scheduler_strategy,
                             const GameStrategy& opponent_strategy, int rounds,
                             int m, size_t k) {
  if (rounds < 1) throw std::invalid_argument("game: rounds >= 1");
  GameResult result;
  auto play = [&](const GameStrategy& strategy) -> size_t {
    const auto move = strategy(result.word);
    if (move.empty()) throw std::runtime_error("game: strategy returned no extension");
    for (int e : move) {
      if (e < 0 || e >= graph.edge_count()) {
        throw std::runtime_error("game: strategy played an edge outside the graph");
      }
    }
    result.word.insert(result.word.end(), move.begin(), move.end());
    return move.size();
  };

  for (int r = 1; r <= rounds; ++r) {
    GameRound round;
    round.round = r;
    round.opponent_added = play(opponent_strategy);
    round.scheduler_added = play(scheduler_strategy);
    const auto prefix = WordPrefix::from_indices(result.word, graph.edge_count());
    round.multiwindow_hits = find_multiwindows(prefix, m, k).size();
    result.rounds.push_back(round);
  }
  return result;
}

GameStrategy flood_opponent(const InfluenceGraph& graph, const std::string& label) {
  const int e = require_edge(graph, label);
  auto turn = std::make_shared<int>(0);
  return [e, turn](const std::vector<int>&) {
    ++*turn;
    return std::vector<int>(static_cast<size_t>(*turn), e);
  };
}

GameStrategy single_edge_opponent(const InfluenceGraph& graph,
                                  const std::string& label) {
  const int e = require_edge(graph, label);
  return [e](const std::vector<int>&) { return std::vector<int>{e}; };
}

GameStrategy multiwindow_strategy(const InfluenceGraph& graph, int m, size_t k) {
  if (m < 1 || k < static_cast<size_t>(graph.edge_count())) {
    throw std::invalid_argument("multiwindow strategy: need m >= 1, k >= |E|");
  }
  std::vector<int> window = edges_in_label_order(graph);
  while (window.size() < k) window.push_back(window.front());
  std::vector<int> move;
  for (int j = 0; j < m; ++j) move.insert(move.end(), window.begin(), window.end());
  return [move](const std::vector<int>&) { return move; };
}

std::vector<int> take_word(Scheduler& scheduler, size_t length) {
  std::vector<int> word;
  word.reserve(length);
  OpinionState dummy(std::vector<double>{0.0, 0.0});
  for (size_t i = 0; i < length; ++i) word.push_back(scheduler.next(dummy));
  return word;
}

}  // namespace otslab
