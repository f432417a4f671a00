#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "otslab/dynamics.hpp"
#include "otslab/graph.hpp"
#include "otslab/words.hpp"

namespace otslab {

/// Influence section of a config, as written in JSON.
struct InfluenceSpec {
  std::string mode = "static";  // static | confirmation_bias | fig5a | fig5b
  std::optional<std::pair<double, double>> scaled;  // IL, IU
  double lower = 0.0;  // fig5a/fig5b L
  double upper = 0.0;  // fig5a/fig5b U
};

/// Scheduler section of a config, as written in JSON.
struct SchedulerSpec {
  std::string type;  // periodic | random | cons12 | cons23 | extend | growing_blocks
  std::vector<std::string> word;    // periodic
  std::vector<std::string> prefix;  // extend
  std::map<std::string, double> probabilities;  // random (empty = uniform)
  std::optional<uint64_t> seed;                 // random; falls back to config seed
  double lower = 0.0;
  double upper = 0.0;
  uint64_t guard = 1000000;
  int start_n = 1;  // growing_blocks
};

/// One experiment: everything a command needs to run deterministically.
struct ExperimentConfig {
  InfluenceGraph graph;
  OpinionState initial;
  InfluenceSpec influence;
  SchedulerSpec scheduler;
  size_t steps = 0;
  double tolerance = 1e-6;
  uint64_t seed = 0;
  std::optional<std::string> trace_path;
  std::optional<std::string> svg_path;
};

/// Strict parse: unknown fields anywhere are rejected, the initial vector
/// must match the agent count with values in [0,1], and referenced edge
/// labels must exist. Throws std::invalid_argument with a message naming
/// the offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// JSON text for a config (round-trips through parse_config).
std::string config_to_json(const ExperimentConfig& config);

InfluenceFunction make_influence(const ExperimentConfig& config);
SchedulerPtr make_scheduler(const ExperimentConfig& config);

/// Graph section alone (strict), e.g. {"agents":3,"edges":[...]}.
InfluenceGraph parse_graph_json(const std::string& json_text);

}  // namespace otslab
