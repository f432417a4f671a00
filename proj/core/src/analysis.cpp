#include "otslab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "otslab/rng.hpp"

namespace otslab {

namespace {

// Influence value alongside the updated state; mirrors step().
std::pair<OpinionState, double> step_with_value(const OpinionState& state,
                                                int edge_index,
                                                const InfluenceFunction& influence,
                                                const InfluenceGraph& graph) {
  const double w = influence(graph, edge_index, state);
  const Edge& edge = graph.edge(edge_index);
  const double from = state[static_cast<size_t>(edge.from)];
  const double to = state[static_cast<size_t>(edge.to)];
  double updated;
  if (w == 1.0) {
    updated = from;
  } else {
    updated = to + (from - to) * w;
    updated = std::min(std::max(updated, state.min()), state.max());
  }
  OpinionState next = state;
  next[static_cast<size_t>(edge.to)] = updated;
  return {std::move(next), w};
}

void check_initial(const InfluenceGraph& graph, const OpinionState& initial) {
  if (static_cast<int>(initial.size()) != graph.agent_count() || !initial.valid()) {
    throw std::invalid_argument("execute: initial state invalid for this graph");
  }
}

[[noreturn]] void invariant_failure(const char* what, size_t t) {
  throw std::logic_error(std::string("run invariant violated (") + what +
                         ") at step " + std::to_string(t) +
                         "; this signals an engine bug");
}

}  // namespace

RunTrace execute(const InfluenceGraph& graph, const OpinionState& initial,
                 const InfluenceFunction& influence, Scheduler& scheduler,
                 size_t steps) {
  check_initial(graph, initial);
  RunTrace trace;
  trace.initial = initial;
  trace.actions.reserve(steps);
  trace.influences.reserve(steps);
  trace.states.reserve(steps);
  trace.max_seq.reserve(steps + 1);
  trace.min_seq.reserve(steps + 1);
  trace.max_seq.push_back(initial.max());
  trace.min_seq.push_back(initial.min());

  OpinionState current = initial;
  for (size_t t = 0; t < steps; ++t) {
    const int e = scheduler.next(current);
    if (e < 0 || e >= graph.edge_count()) {
      throw std::runtime_error("execute: scheduler produced an edge outside E");
    }
    auto [next, value] = step_with_value(current, e, influence, graph);

    const double prev_min = trace.min_seq.back();
    const double prev_max = trace.max_seq.back();
    const double next_max = next.max();
    const double next_min = next.min();
    for (double v : next.values) {
      if (v < prev_min || v > prev_max) invariant_failure("extremal bounds", t);
    }
    if (next_max > prev_max || next_min < prev_min) {
      invariant_failure("monotone extremes", t);
    }

    trace.actions.push_back(e);
    trace.influences.push_back(value);
    trace.states.push_back(next);
    trace.max_seq.push_back(next_max);
    trace.min_seq.push_back(next_min);
    current = std::move(next);
  }
  return trace;
}

ConvergenceReport run_summary(const InfluenceGraph& graph, const OpinionState& initial,
                              const InfluenceFunction& influence, Scheduler& scheduler,
                              size_t steps, double tolerance, size_t sample_stride) {
  check_initial(graph, initial);
  if (sample_stride == 0) sample_stride = std::max<size_t>(1, steps / 256);

  ConvergenceReport report;
  report.tolerance = tolerance;
  OpinionState current = initial;
  double running_max = current.max();
  double running_min = current.min();
  report.gap_series.emplace_back(0, running_max - running_min);

  for (size_t t = 0; t < steps; ++t) {
    const int e = scheduler.next(current);
    if (e < 0 || e >= graph.edge_count()) {
      throw std::runtime_error("run: scheduler produced an edge outside E");
    }
    auto [next, value] = step_with_value(current, e, influence, graph);
    (void)value;
    const double next_max = next.max();
    const double next_min = next.min();
    if (next_max > running_max || next_min < running_min) {
      invariant_failure("monotone extremes", t);
    }
    running_max = next_max;
    running_min = next_min;
    current = std::move(next);
    if ((t + 1) % sample_stride == 0 || t + 1 == steps) {
      report.gap_series.emplace_back(t + 1, running_max - running_min);
    }
  }
  report.u_hat = running_max;
  report.l_hat = running_min;
  report.gap = running_max - running_min;
  report.consensus = report.gap < tolerance;
  return report;
}

ConvergenceReport convergence(const RunTrace& trace, double tolerance) {
  if (trace.max_seq.empty()) throw std::invalid_argument("convergence: empty trace");
  ConvergenceReport report;
  report.tolerance = tolerance;
  report.u_hat = trace.max_seq.back();
  report.l_hat = trace.min_seq.back();
  report.gap = report.u_hat - report.l_hat;
  report.consensus = report.gap < tolerance;
  const size_t stride = std::max<size_t>(1, trace.steps() / 256);
  for (size_t t = 0; t < trace.max_seq.size(); t += stride) {
    report.gap_series.emplace_back(t, trace.max_seq[t] - trace.min_seq[t]);
  }
  if (report.gap_series.back().first != trace.steps()) {
    report.gap_series.emplace_back(trace.steps(), report.gap);
  }
  return report;
}

std::optional<size_t> delta_of_path(const std::vector<int>& word, const GPath& path) {
  size_t pos = 0;
  for (int needed : path.edges) {
    while (pos < word.size() && word[pos] != needed) ++pos;
    if (pos == word.size()) return std::nullopt;
    ++pos;  // consumed; pos is now the 1-based prefix length so far
  }
  return pos;
}

namespace {

// Occurrence positions per edge, for O(log) "first occurrence >= t" queries.
class OccurrenceIndex {
 public:
  OccurrenceIndex(const std::vector<int>& word, int alphabet_size)
      : positions_(static_cast<size_t>(alphabet_size)) {
    for (size_t i = 0; i < word.size(); ++i) {
      positions_[static_cast<size_t>(word[i])].push_back(i);
    }
  }

  static constexpr size_t npos = static_cast<size_t>(-1);

  size_t first_at_or_after(int symbol, size_t t) const {
    const auto& pos = positions_[static_cast<size_t>(symbol)];
    const auto it = std::lower_bound(pos.begin(), pos.end(), t);
    return it == pos.end() ? npos : *it;
  }

 private:
  std::vector<std::vector<size_t>> positions_;
};

// Prefix tree of all simple paths from one agent; every node is a path.
struct PathTrie {
  struct Node {
    int edge;
    int parent;  // index into nodes, -1 for a root child's parent
  };
  std::vector<Node> nodes;  // parents always precede children

  static PathTrie build(const InfluenceGraph& graph, AgentId start) {
    PathTrie trie;
    std::vector<char> visited(static_cast<size_t>(graph.agent_count()), 0);
    visited[static_cast<size_t>(start)] = 1;
    grow(graph, start, -1, visited, trie);
    return trie;
  }

  // Largest 1-based completion length over all nodes, scanning the word
  // from `from`; nullopt when some path does not complete.
  std::optional<size_t> max_completion(const OccurrenceIndex& index,
                                       size_t from) const {
    if (nodes.empty()) return 0;
    std::vector<size_t> completed(nodes.size());
    size_t worst = 0;
    for (size_t i = 0; i < nodes.size(); ++i) {
      const size_t after =
          nodes[i].parent < 0 ? from : completed[static_cast<size_t>(nodes[i].parent)];
      const size_t at = index.first_at_or_after(nodes[i].edge, after);
      if (at == OccurrenceIndex::npos) return std::nullopt;
      completed[i] = at + 1;
      worst = std::max(worst, at + 1 - from);
    }
    return worst;
  }

 private:
  static void grow(const InfluenceGraph& graph, AgentId at, int parent,
                   std::vector<char>& visited, PathTrie& trie) {
    for (int e : graph.out_edges(at)) {
      const AgentId next = graph.edge(e).to;
      if (visited[static_cast<size_t>(next)]) continue;
      trie.nodes.push_back({e, parent});
      const int node = static_cast<int>(trie.nodes.size()) - 1;
      visited[static_cast<size_t>(next)] = 1;
      grow(graph, next, node, visited, trie);
      visited[static_cast<size_t>(next)] = 0;
    }
  }
};

}  // namespace

std::optional<size_t> delta_of_agent(const std::vector<int>& word,
                                     const InfluenceGraph& graph, AgentId agent) {
  const OccurrenceIndex index(word, graph.edge_count());
  const PathTrie trie = PathTrie::build(graph, agent);
  if (trie.nodes.empty()) return std::nullopt;  // no outgoing paths
  return trie.max_completion(index, 0);
}

AgentId min_opinion_agent(const OpinionState& state) {
  if (state.size() == 0) throw std::invalid_argument("min_opinion_agent: empty state");
  AgentId best = 0;
  for (size_t i = 1; i < state.size(); ++i) {
    if (state[i] < state[static_cast<size_t>(best)]) best = static_cast<AgentId>(i);
  }
  return best;
}

std::vector<size_t> delta_bound_scan(const RunTrace& trace,
                                     const InfluenceGraph& graph, size_t beta,
                                     size_t stride) {
  if (stride == 0) stride = 100;
  const OccurrenceIndex index(trace.actions, graph.edge_count());
  std::vector<PathTrie> tries;
  tries.reserve(static_cast<size_t>(graph.agent_count()));
  for (AgentId i = 0; i < graph.agent_count(); ++i) {
    tries.push_back(PathTrie::build(graph, i));
  }
  std::vector<size_t> hits;
  for (size_t t = 0; t < trace.steps(); t += stride) {
    const AgentId m = min_opinion_agent(trace.state_at(t));
    const auto delta = tries[static_cast<size_t>(m)].max_completion(index, t);
    if (delta && *delta > 0 && *delta <= beta) hits.push_back(t);
  }
  return hits;
}

size_t AuditReport::total_violations() const {
  size_t total = 0;
  for (const auto& entry : entries) total += entry.violations;
  return total;
}

const AuditEntry& AuditReport::entry(const std::string& name) const {
  for (const auto& entry : entries) {
    if (entry.name == name) return entry;
  }
  throw std::out_of_range("audit report: no entry named " + name);
}

namespace {

struct BoundCounter {
  AuditEntry entry;

  explicit BoundCounter(std::string name) { entry.name = std::move(name); }

  // Records lhs <= rhs + slack.
  void upper(double lhs, double rhs, double slack) {
    ++entry.checks;
    if (lhs > rhs + slack) {
      ++entry.violations;
      entry.worst_excess = std::max(entry.worst_excess, lhs - rhs);
    }
  }

  // Records lhs >= rhs - slack.
  void lower(double lhs, double rhs, double slack) { upper(rhs, lhs, slack); }
};

}  // namespace

AuditReport audit_bounds(const RunTrace& trace, const InfluenceGraph& graph,
                         const AuditOptions& options) {
  const size_t steps = trace.steps();
  const int n = graph.agent_count();
  const double slack = options.slack;
  auto [rate_min, rate_max] = options.rate_bounds
                                  ? *options.rate_bounds
                                  : influence_extrema(graph);

  BoundCounter extremes("extremes");
  BoundCounter one_step("one_step");
  BoundCounter n_step("n_step");
  BoundCounter direct("direct");
  BoundCounter path_bound("path");
  BoundCounter spread("spread");

  // Per-transition bounds.
  for (size_t t = 0; t < steps; ++t) {
    const OpinionState& before = trace.state_at(t);
    const OpinionState& after = trace.state_at(t + 1);
    const double lo = trace.min_seq[t];
    const double hi = trace.max_seq[t];
    for (int k = 0; k < n; ++k) {
      const double v = after[static_cast<size_t>(k)];
      extremes.upper(v, hi, slack);
      extremes.lower(v, lo, slack);
      one_step.upper(v,
                     before[static_cast<size_t>(k)] * (1.0 - rate_max) + hi * rate_max,
                     slack);
    }
  }

  // Suffix-anchored bounds, sampled.
  size_t stride = options.suffix_stride;
  if (stride == 0) stride = std::max<size_t>(1, steps / 64);

  for (size_t s = 0; s < steps; s += stride) {
    const OpinionState& base = trace.state_at(s);
    const double base_max = trace.max_seq[s];
    // decay = (1 - rate_max)^(t - s), updated incrementally
    double decay = 1.0;
    for (size_t t = s; t < steps; ++t) {
      const OpinionState& after = trace.state_at(t + 1);
      const Edge& edge = graph.edge(trace.actions[t]);
      // direct bound for the agent the fired edge points to
      direct.upper(after[static_cast<size_t>(edge.to)],
                   base_max - rate_min * decay *
                                  (base_max - base[static_cast<size_t>(edge.from)]),
                   slack);
      decay *= (1.0 - rate_max);
      // n-step bound, n = t - s + 1
      for (int i = 0; i < n; ++i) {
        n_step.upper(after[static_cast<size_t>(i)],
                     base_max - decay * (base_max - base[static_cast<size_t>(i)]),
                     slack);
      }
      if (decay == 0.0) break;  // bounds are vacuous from here on
    }
  }

  // Path bound on sampled (suffix, path) pairs and the spread bound via
  // delta for every agent at sampled suffixes. The spread bound reasons
  // about paths from the agent to everyone, so it only applies to strongly
  // connected graphs.
  const bool spread_applies = is_strongly_connected(graph);
  {
    std::vector<std::vector<GPath>> paths(static_cast<size_t>(n));
    for (AgentId i = 0; i < n; ++i) {
      paths[static_cast<size_t>(i)] = simple_paths_from(graph, i);
    }

    Rng rng(options.seed);
    size_t path_checks = 0;
    for (size_t s = 0; s < steps && path_checks < options.path_budget; s += stride) {
      const OpinionState& base = trace.state_at(s);
      const double base_max = trace.max_seq[s];
      const std::vector<int> suffix(trace.actions.begin() +
                                        static_cast<std::ptrdiff_t>(s),
                                    trace.actions.end());
      for (AgentId i = 0; i < n && path_checks < options.path_budget; ++i) {
        const auto& from_i = paths[static_cast<size_t>(i)];
        if (from_i.empty()) continue;
        // sample a handful of paths per (suffix, agent)
        const size_t samples = std::min<size_t>(from_i.size(), 8);
        for (size_t draw = 0; draw < samples; ++draw) {
          const auto& p =
              from_i[static_cast<size_t>(rng.uniform01() * from_i.size())];
          const auto d = delta_of_path(suffix, p);
          if (!d || s + *d > steps) continue;
          const AgentId j = graph.edge(p.edges.back()).to;
          const double bound =
              base_max - std::pow(rate_min, static_cast<double>(p.length())) *
                             std::pow(1.0 - rate_max, static_cast<double>(*d)) *
                             (base_max - base[static_cast<size_t>(i)]);
          path_bound.upper(trace.state_at(s + *d)[static_cast<size_t>(j)], bound,
                           slack);
          ++path_checks;
        }

        // spread bound: needs delta over the suffix for agent i
        if (!spread_applies) continue;
        const auto delta = delta_of_agent(suffix, graph, i);
        if (delta && *delta > 0 && s + *delta <= steps) {
          const double eps =
              std::pow(rate_min, static_cast<double>(n)) *
              std::pow(1.0 - rate_max, static_cast<double>(*delta)) *
              (base_max - base[static_cast<size_t>(i)]);
          spread.lower(base_max - trace.max_seq[s + *delta], eps, slack);
        }
      }
    }
  }

  AuditReport report;
  report.entries = {extremes.entry, one_step.entry, n_step.entry,
                    direct.entry,   path_bound.entry, spread.entry};
  return report;
}

std::vector<DecrementCheck> epsilon_decrement(const RunTrace& trace,
                                              const InfluenceGraph& graph,
                                              size_t beta, double u_limit,
                                              double l_limit,
                                              const AuditOptions& options) {
  if (u_limit < l_limit) {
    throw std::invalid_argument("epsilon_decrement: U must be >= L");
  }
  auto [rate_min, rate_max] = options.rate_bounds
                                  ? *options.rate_bounds
                                  : influence_extrema(graph);
  const double epsilon =
      std::pow(rate_min, static_cast<double>(graph.agent_count())) *
      std::pow(1.0 - rate_max, static_cast<double>(beta)) * (u_limit - l_limit);

  std::vector<DecrementCheck> checks;
  const size_t stride = options.suffix_stride == 0 ? 100 : options.suffix_stride;
  for (size_t t : delta_bound_scan(trace, graph, beta, stride)) {
    if (t + beta > trace.steps()) continue;
    DecrementCheck check;
    check.suffix_start = t;
    check.decrement = trace.max_seq[t] - trace.max_seq[t + beta];
    check.epsilon = epsilon;
    checks.push_back(check);
  }
  return checks;
}

int min_effort(double b_i, double b_j, double target) {
  if (!(b_i < target && target < b_j)) {
    throw std::invalid_argument("min_effort: need b_i < target < b_j");
  }
  const double ratio = (b_j - b_i) / (b_j - target);
  // exact ceil(log2(ratio)) on the computed double ratio
  int t = 0;
  double power = 1.0;
  while (power < ratio) {
    power *= 2.0;
    ++t;
  }
  return t;
}

std::vector<size_t> shuttle_block_c_counts(const std::vector<int>& actions,
                                           const InfluenceGraph& graph) {
  const auto a = graph.edge_by_label("a");
  const auto b = graph.edge_by_label("b");
  const auto c = graph.edge_by_label("c");
  const auto d = graph.edge_by_label("d");
  if (!a || !b || !c || !d) {
    throw std::invalid_argument("block parse: graph lacks actions a,b,c,d");
  }
  std::vector<size_t> counts;
  enum class At { a_run, c_run } where = At::a_run;
  size_t a_count = 0, c_count = 0;
  for (int e : actions) {
    if (where == At::a_run) {
      if (e == *a) {
        ++a_count;
      } else if (e == *b && a_count > 0) {
        where = At::c_run;
        c_count = 0;
      } else {
        throw std::invalid_argument("block parse: word is not of shape (a+ b c+ d)*");
      }
    } else {
      if (e == *c) {
        ++c_count;
      } else if (e == *d && c_count > 0) {
        counts.push_back(c_count);
        where = At::a_run;
        a_count = 0;
      } else {
        throw std::invalid_argument("block parse: word is not of shape (a+ b c+ d)*");
      }
    }
  }
  return counts;
}

}  // namespace otslab
