#include "otslab/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "otslab/rng.hpp"

namespace otslab {

InfluenceGraph::InfluenceGraph(int agent_count, std::vector<Edge> edges,
                               std::vector<double> weights)
    : agent_count_(agent_count),
      edges_(std::move(edges)),
      weights_(std::move(weights)) {
  if (weights_.size() != edges_.size()) {
    throw std::invalid_argument("graph: one weight per edge required");
  }
  out_edges_.assign(static_cast<size_t>(std::max(agent_count_, 0)), {});
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& edge = edges_[static_cast<size_t>(e)];
    if (edge.from >= 0 && edge.from < agent_count_) {
      out_edges_[static_cast<size_t>(edge.from)].push_back(e);
    }
  }
}

std::optional<int> InfluenceGraph::edge_by_label(const std::string& label) const {
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[static_cast<size_t>(e)].label == label) return e;
  }
  return std::nullopt;
}

std::optional<int> InfluenceGraph::edge_between(AgentId from, AgentId to) const {
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& edge = edges_[static_cast<size_t>(e)];
    if (edge.from == from && edge.to == to) return e;
  }
  return std::nullopt;
}

ValidationReport validate(const InfluenceGraph& graph) {
  ValidationReport report;
  auto add = [&report](std::string msg) { report.problems.push_back(std::move(msg)); };

  if (graph.agent_count() < 2) add("agent count must be at least 2");

  std::set<std::pair<AgentId, AgentId>> seen_pairs;
  std::set<std::string> seen_labels;
  for (int e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edge(e);
    const std::string where = "edge '" + edge.label + "'";
    if (edge.from < 0 || edge.from >= graph.agent_count() || edge.to < 0 ||
        edge.to >= graph.agent_count()) {
      add(where + ": endpoint out of range");
      continue;
    }
    if (edge.from == edge.to) add(where + ": self-loop");
    if (!seen_pairs.insert({edge.from, edge.to}).second) {
      add(where + ": duplicate edge");
    }
    if (!seen_labels.insert(edge.label).second) {
      add(where + ": duplicate label");
    }
    const double w = graph.weight(e);
    if (!(w > 0.0 && w <= 1.0)) add(where + ": weight not in (0,1]");
  }
  return report;
}

namespace {

// Iterative Tarjan; returns the number of strongly connected components.
int scc_count(const InfluenceGraph& graph) {
  const int n = graph.agent_count();
  std::vector<int> index(static_cast<size_t>(n), -1);
  std::vector<int> lowlink(static_cast<size_t>(n), -1);
  std::vector<char> on_stack(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  int next_index = 0;
  int components = 0;

  struct Frame {
    int vertex;
    size_t edge_pos;
  };

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[static_cast<size_t>(root)] = lowlink[static_cast<size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = 1;

    while (!frames.empty()) {
      Frame& frame = frames.back();
      const auto& out = graph.out_edges(frame.vertex);
      if (frame.edge_pos < out.size()) {
        const int succ = graph.edge(out[frame.edge_pos++]).to;
        if (index[static_cast<size_t>(succ)] == -1) {
          index[static_cast<size_t>(succ)] = lowlink[static_cast<size_t>(succ)] =
              next_index++;
          stack.push_back(succ);
          on_stack[static_cast<size_t>(succ)] = 1;
          frames.push_back({succ, 0});
        } else if (on_stack[static_cast<size_t>(succ)]) {
          lowlink[static_cast<size_t>(frame.vertex)] =
              std::min(lowlink[static_cast<size_t>(frame.vertex)],
                       index[static_cast<size_t>(succ)]);
        }
      } else {
        const int v = frame.vertex;
        frames.pop_back();
        if (!frames.empty()) {
          const int parent = frames.back().vertex;
          lowlink[static_cast<size_t>(parent)] = std::min(
              lowlink[static_cast<size_t>(parent)], lowlink[static_cast<size_t>(v)]);
        }
        if (lowlink[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
          ++components;
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = 0;
            if (w == v) break;
          }
        }
      }
    }
  }
  return components;
}

}  // namespace

bool is_strongly_connected(const InfluenceGraph& graph) {
  if (graph.agent_count() < 1) return false;
  return scc_count(graph) == 1;
}

bool is_puppet_free(const InfluenceGraph& graph) {
  for (int e = 0; e < graph.edge_count(); ++e) {
    if (!(graph.weight(e) < 1.0)) return false;
  }
  return true;
}

namespace {

void extend_paths(const InfluenceGraph& graph, AgentId at, std::vector<char>& visited,
                  std::vector<int>& current, std::vector<GPath>& out) {
  for (int e : graph.out_edges(at)) {
    const AgentId next = graph.edge(e).to;
    if (visited[static_cast<size_t>(next)]) continue;
    current.push_back(e);
    out.push_back(GPath{current});
    visited[static_cast<size_t>(next)] = 1;
    extend_paths(graph, next, visited, current, out);
    visited[static_cast<size_t>(next)] = 0;
    current.pop_back();
  }
}

}  // namespace

std::vector<GPath> simple_paths_from(const InfluenceGraph& graph, AgentId start) {
  std::vector<GPath> paths;
  if (start < 0 || start >= graph.agent_count()) return paths;
  std::vector<char> visited(static_cast<size_t>(graph.agent_count()), 0);
  visited[static_cast<size_t>(start)] = 1;
  std::vector<int> current;
  extend_paths(graph, start, visited, current, paths);
  return paths;
}

bool is_gpath(const InfluenceGraph& graph, const GPath& path) {
  if (path.edges.empty()) return false;
  std::vector<char> visited(static_cast<size_t>(graph.agent_count()), 0);
  for (size_t k = 0; k < path.edges.size(); ++k) {
    const int e = path.edges[k];
    if (e < 0 || e >= graph.edge_count()) return false;
    const Edge& edge = graph.edge(e);
    if (k == 0) {
      visited[static_cast<size_t>(edge.from)] = 1;
    } else if (graph.edge(path.edges[k - 1]).to != edge.from) {
      return false;
    }
    if (visited[static_cast<size_t>(edge.to)]) return false;
    visited[static_cast<size_t>(edge.to)] = 1;
  }
  return true;
}

std::pair<double, double> influence_extrema(const InfluenceGraph& graph) {
  if (graph.edge_count() == 0) {
    throw std::invalid_argument("influence_extrema: empty edge set");
  }
  double lo = graph.weight(0);
  double hi = graph.weight(0);
  for (int e = 1; e < graph.edge_count(); ++e) {
    lo = std::min(lo, graph.weight(e));
    hi = std::max(hi, graph.weight(e));
  }
  return {lo, hi};
}

InfluenceGraph random_graph(int agent_count, double edge_probability, double weight,
                            uint64_t seed) {
  if (agent_count < 2) throw std::invalid_argument("random_graph: n must be >= 2");
  if (!(edge_probability > 0.0 && edge_probability <= 1.0)) {
    throw std::invalid_argument("random_graph: edge probability must be in (0,1]");
  }
  if (!(weight > 0.0 && weight <= 1.0)) {
    throw std::invalid_argument("random_graph: weight must be in (0,1]");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<double> weights;
  int next_label = 0;
  for (AgentId i = 0; i < agent_count; ++i) {
    for (AgentId j = 0; j < agent_count; ++j) {
      if (i == j) continue;
      if (rng.uniform01() < edge_probability) {
        edges.push_back({i, j, "e" + std::to_string(next_label++)});
        weights.push_back(weight);
      }
    }
  }
  return InfluenceGraph(agent_count, std::move(edges), std::move(weights));
}

}  // namespace otslab
