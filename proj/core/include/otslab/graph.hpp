#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace otslab {

/// Agents are stored 0-based; user-facing output is 1-based.
using AgentId = int;

/// Directed influence edge. `label` addresses the edge as an action.
struct Edge {
  AgentId from = 0;
  AgentId to = 0;
  std::string label;
};

/// Weighted directed influence graph. Weights live in (0,1]; edge identity
/// is the index into `edges` (labels are unique and map back to indices).
/// Immutable after construction by convention: nothing in the library
/// mutates a graph once built, so instances can be shared across threads.
class InfluenceGraph {
 public:
  InfluenceGraph() = default;
  InfluenceGraph(int agent_count, std::vector<Edge> edges,
                 std::vector<double> weights);

  int agent_count() const { return agent_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[static_cast<size_t>(index)]; }
  double weight(int index) const { return weights_[static_cast<size_t>(index)]; }
  const std::vector<double>& weights() const { return weights_; }

  /// Index of the edge carrying `label`, or nullopt.
  std::optional<int> edge_by_label(const std::string& label) const;
  /// Index of the edge (from, to), or nullopt.
  std::optional<int> edge_between(AgentId from, AgentId to) const;

  /// Edge indices leaving `agent`.
  const std::vector<int>& out_edges(AgentId agent) const {
    return out_edges_[static_cast<size_t>(agent)];
  }

 private:
  int agent_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
  std::vector<std::vector<int>> out_edges_;
};

/// Simple directed path: a chain of edge indices visiting pairwise
/// distinct agents. Length is the number of edges (at most n-1).
struct GPath {
  std::vector<int> edges;

  size_t length() const { return edges.size(); }
};

/// One message per violated invariant; empty means well formed.
struct ValidationReport {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

/// Checks n >= 2, no self-loops, weights in (0,1], no duplicate edges,
/// no duplicate labels, endpoints in range. Diagnostic only, never throws.
ValidationReport validate(const InfluenceGraph& graph);

/// True iff every ordered agent pair is joined by a directed path
/// (single strongly connected component covering all agents).
bool is_strongly_connected(const InfluenceGraph& graph);

/// True iff every weight is strictly below 1.
bool is_puppet_free(const InfluenceGraph& graph);

/// All simple directed paths starting at `start`, every length 1..n-1.
/// Worst case exponential in n; callers cap n (the CLI default cap is 12).
std::vector<GPath> simple_paths_from(const InfluenceGraph& graph, AgentId start);

/// True iff `path.edges` chains correctly in `graph` and visits pairwise
/// distinct agents.
bool is_gpath(const InfluenceGraph& graph, const GPath& path);

/// (min, max) over all edge weights. Requires a nonempty edge set.
std::pair<double, double> influence_extrema(const InfluenceGraph& graph);

/// Seeded G(n,p) digraph: each ordered pair (i,j), i != j, is included
/// independently with `edge_probability`; every edge gets `weight` and an
/// auto-generated label "e0","e1",... Pure function of its arguments.
InfluenceGraph random_graph(int agent_count, double edge_probability,
                            double weight, uint64_t seed);

}  // namespace otslab
