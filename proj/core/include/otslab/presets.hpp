#pragma once

#include <string>
#include <vector>

#include "otslab/config.hpp"
#include "otslab/graph.hpp"

namespace otslab {

/// Three agents in a chain 1 <-> 2 <-> 3 with actions a:1->2, b:2->1,
/// c:3->2, d:2->3 (1-based) and one weight for all edges.
InfluenceGraph chain3_graph(double weight = 0.5);

/// Four agents in a chain 1 <-> 2 <-> 3 <-> 4 with actions a:1->2, b:2->1,
/// c:3->2, d:2->3, e:4->3, f:3->4.
InfluenceGraph chain4_graph(double weight = 0.5);

/// Six agents in three two-agent groups; groups {1,2} and {5,6} influence
/// {3,4} but receive no outside influence. Weights 0.5. Not strongly
/// connected.
InfluenceGraph grouped6_graph();

/// Two agents with both directed edges (a:1->2, b:2->1).
InfluenceGraph pair_graph(double weight = 0.5);

struct ReproducePreset {
  std::string id;
  std::string description;
  ExperimentConfig config;
  bool plot_influences = false;  // dual plot for dynamic-influence runs
};

std::vector<std::string> preset_ids();

/// Built-in demo scenario by id; throws std::invalid_argument listing the
/// valid ids for an unknown one.
ReproducePreset reproduce_preset(const std::string& id);

}  // namespace otslab
