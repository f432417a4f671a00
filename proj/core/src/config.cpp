#include "otslab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace otslab {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw std::invalid_argument("config: unknown field '" + key + "' in " + where);
    }
  }
}

const json& require(const json& object, const std::string& where,
                    const std::string& key) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw std::invalid_argument("config: missing field '" + key + "' in " + where);
  }
  return *it;
}

InfluenceGraph parse_graph(const json& g) {
  if (!g.is_object()) throw std::invalid_argument("config: graph must be an object");
  reject_unknown(g, "graph", {"agents", "edges"});
  const int agents = require(g, "graph", "agents").get<int>();
  std::vector<Edge> edges;
  std::vector<double> weights;
  for (const auto& e : require(g, "graph", "edges")) {
    reject_unknown(e, "edge", {"from", "to", "label", "weight"});
    Edge edge;
    edge.from = require(e, "edge", "from").get<int>() - 1;  // config is 1-based
    edge.to = require(e, "edge", "to").get<int>() - 1;
    edge.label = require(e, "edge", "label").get<std::string>();
    edges.push_back(edge);
    weights.push_back(require(e, "edge", "weight").get<double>());
  }
  InfluenceGraph graph(agents, std::move(edges), std::move(weights));
  const auto report = validate(graph);
  if (!report.ok()) {
    std::string msg = "config: invalid graph:";
    for (const auto& p : report.problems) msg += " " + p + ";";
    throw std::invalid_argument(msg);
  }
  return graph;
}

InfluenceSpec parse_influence(const json& j) {
  InfluenceSpec spec;
  if (!j.is_object()) throw std::invalid_argument("config: influence must be an object");
  spec.mode = require(j, "influence", "mode").get<std::string>();
  if (spec.mode == "static" || spec.mode == "confirmation_bias") {
    reject_unknown(j, "influence", {"mode", "scaled"});
    if (j.contains("scaled")) {
      const json& s = j["scaled"];
      reject_unknown(s, "influence.scaled", {"IL", "IU"});
      spec.scaled = {require(s, "influence.scaled", "IL").get<double>(),
                     require(s, "influence.scaled", "IU").get<double>()};
    }
  } else if (spec.mode == "fig5a" || spec.mode == "fig5b") {
    reject_unknown(j, "influence", {"mode", "L", "U", "scaled"});
    spec.lower = require(j, "influence", "L").get<double>();
    spec.upper = require(j, "influence", "U").get<double>();
    if (j.contains("scaled")) {
      const json& s = j["scaled"];
      reject_unknown(s, "influence.scaled", {"IL", "IU"});
      spec.scaled = {require(s, "influence.scaled", "IL").get<double>(),
                     require(s, "influence.scaled", "IU").get<double>()};
    }
  } else {
    throw std::invalid_argument("config: unknown influence mode '" + spec.mode + "'");
  }
  return spec;
}

SchedulerSpec parse_scheduler(const json& j) {
  SchedulerSpec spec;
  if (!j.is_object()) throw std::invalid_argument("config: scheduler must be an object");
  spec.type = require(j, "scheduler", "type").get<std::string>();
  if (spec.type == "periodic") {
    reject_unknown(j, "scheduler", {"type", "word"});
    for (const auto& w : require(j, "scheduler", "word")) {
      spec.word.push_back(w.get<std::string>());
    }
  } else if (spec.type == "random") {
    reject_unknown(j, "scheduler", {"type", "seed", "probs"});
    if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
    if (j.contains("probs")) {
      for (const auto& [label, p] : j["probs"].items()) {
        spec.probabilities[label] = p.get<double>();
      }
    }
  } else if (spec.type == "cons12" || spec.type == "cons23") {
    reject_unknown(j, "scheduler", {"type", "L", "U", "guard"});
    spec.lower = require(j, "scheduler", "L").get<double>();
    spec.upper = require(j, "scheduler", "U").get<double>();
    if (j.contains("guard")) spec.guard = j["guard"].get<uint64_t>();
  } else if (spec.type == "extend") {
    reject_unknown(j, "scheduler", {"type", "prefix"});
    for (const auto& w : require(j, "scheduler", "prefix")) {
      spec.prefix.push_back(w.get<std::string>());
    }
  } else if (spec.type == "growing_blocks") {
    reject_unknown(j, "scheduler", {"type", "start_n"});
    if (j.contains("start_n")) spec.start_n = j["start_n"].get<int>();
  } else {
    throw std::invalid_argument("config: unknown scheduler type '" + spec.type + "'");
  }
  return spec;
}

ExperimentConfig parse_config_fields(const json& root) {
  if (!root.is_object()) throw std::invalid_argument("config: root must be an object");
  reject_unknown(root, "config",
                 {"graph", "initial", "influence", "scheduler", "steps", "tolerance",
                  "seed", "output"});

  ExperimentConfig config;
  config.graph = parse_graph(require(root, "config", "graph"));

  std::vector<double> initial;
  for (const auto& v : require(root, "config", "initial")) {
    initial.push_back(v.get<double>());
  }
  config.initial = OpinionState(std::move(initial));
  if (static_cast<int>(config.initial.size()) != config.graph.agent_count()) {
    throw std::invalid_argument("config: initial vector length must equal agent count");
  }
  if (!config.initial.valid()) {
    throw std::invalid_argument("config: initial opinions must lie in [0,1]");
  }

  config.influence = parse_influence(require(root, "config", "influence"));
  config.scheduler = parse_scheduler(require(root, "config", "scheduler"));
  config.steps = require(root, "config", "steps").get<size_t>();
  if (root.contains("tolerance")) config.tolerance = root["tolerance"].get<double>();
  if (root.contains("seed")) config.seed = root["seed"].get<uint64_t>();
  if (root.contains("output")) {
    const json& out = root["output"];
    reject_unknown(out, "output", {"trace", "svg"});
    if (out.contains("trace")) config.trace_path = out["trace"].get<std::string>();
    if (out.contains("svg")) config.svg_path = out["svg"].get<std::string>();
  }

  // Referenced labels must exist; scheduler construction re-checks, but a
  // config error should surface as one.
  for (const auto& label : config.scheduler.word) {
    if (!config.graph.edge_by_label(label)) {
      throw std::invalid_argument("config: scheduler word uses unknown action '" +
                                  label + "'");
    }
  }
  for (const auto& label : config.scheduler.prefix) {
    if (!config.graph.edge_by_label(label)) {
      throw std::invalid_argument("config: scheduler prefix uses unknown action '" +
                                  label + "'");
    }
  }
  for (const auto& [label, p] : config.scheduler.probabilities) {
    (void)p;
    if (!config.graph.edge_by_label(label)) {
      throw std::invalid_argument("config: scheduler probs use unknown action '" +
                                  label + "'");
    }
  }
  return config;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config: not valid JSON: ") + err.what());
  }
  try {
    return parse_config_fields(root);
  } catch (const json::exception& err) {
    // wrong field types and similar shape errors are validation errors
    throw std::invalid_argument(std::string("config: ") + err.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_to_json(const ExperimentConfig& config) {
  json root;
  json graph;
  graph["agents"] = config.graph.agent_count();
  graph["edges"] = json::array();
  for (int e = 0; e < config.graph.edge_count(); ++e) {
    const Edge& edge = config.graph.edge(e);
    graph["edges"].push_back({{"from", edge.from + 1},
                              {"to", edge.to + 1},
                              {"label", edge.label},
                              {"weight", config.graph.weight(e)}});
  }
  root["graph"] = graph;
  root["initial"] = config.initial.values;

  json influence;
  influence["mode"] = config.influence.mode;
  if (config.influence.mode == "fig5a" || config.influence.mode == "fig5b") {
    influence["L"] = config.influence.lower;
    influence["U"] = config.influence.upper;
  }
  if (config.influence.scaled) {
    influence["scaled"] = {{"IL", config.influence.scaled->first},
                           {"IU", config.influence.scaled->second}};
  }
  root["influence"] = influence;

  json scheduler;
  scheduler["type"] = config.scheduler.type;
  if (config.scheduler.type == "periodic") scheduler["word"] = config.scheduler.word;
  if (config.scheduler.type == "extend") scheduler["prefix"] = config.scheduler.prefix;
  if (config.scheduler.type == "random") {
    if (config.scheduler.seed) scheduler["seed"] = *config.scheduler.seed;
    if (!config.scheduler.probabilities.empty()) {
      scheduler["probs"] = config.scheduler.probabilities;
    }
  }
  if (config.scheduler.type == "cons12" || config.scheduler.type == "cons23") {
    scheduler["L"] = config.scheduler.lower;
    scheduler["U"] = config.scheduler.upper;
    scheduler["guard"] = config.scheduler.guard;
  }
  if (config.scheduler.type == "growing_blocks") {
    scheduler["start_n"] = config.scheduler.start_n;
  }
  root["scheduler"] = scheduler;

  root["steps"] = config.steps;
  root["tolerance"] = config.tolerance;
  root["seed"] = config.seed;
  if (config.trace_path || config.svg_path) {
    json out;
    if (config.trace_path) out["trace"] = *config.trace_path;
    if (config.svg_path) out["svg"] = *config.svg_path;
    root["output"] = out;
  }
  return root.dump(2);
}

InfluenceFunction make_influence(const ExperimentConfig& config) {
  InfluenceFunction f = InfluenceFunction::static_weights();
  if (config.influence.mode == "static") {
    f = InfluenceFunction::static_weights();
  } else if (config.influence.mode == "confirmation_bias") {
    f = InfluenceFunction::confirmation_bias();
  } else if (config.influence.mode == "fig5a") {
    f = InfluenceFunction::polarizing_pair(config.influence.lower,
                                           config.influence.upper);
  } else if (config.influence.mode == "fig5b") {
    f = InfluenceFunction::polarizing_triple(config.influence.lower,
                                             config.influence.upper);
  } else {
    throw std::invalid_argument("unknown influence mode '" + config.influence.mode +
                                "'");
  }
  if (config.influence.scaled) {
    f = f.bounded_into(config.influence.scaled->first,
                       config.influence.scaled->second);
  }
  return f;
}

SchedulerPtr make_scheduler(const ExperimentConfig& config) {
  const SchedulerSpec& spec = config.scheduler;
  if (spec.type == "periodic") {
    return periodic_scheduler(config.graph, spec.word);
  }
  if (spec.type == "random") {
    return random_scheduler(config.graph, spec.probabilities,
                            spec.seed ? *spec.seed : config.seed);
  }
  if (spec.type == "cons12") {
    return shuttle_scheduler(config.graph, spec.lower, spec.upper, spec.guard);
  }
  if (spec.type == "cons23") {
    return window_shuttle_scheduler(config.graph, spec.lower, spec.upper, spec.guard);
  }
  if (spec.type == "extend") {
    return extend_scheduler(config.graph, spec.prefix);
  }
  if (spec.type == "growing_blocks") {
    return growing_block_scheduler(config.graph, spec.start_n);
  }
  throw std::invalid_argument("unknown scheduler type '" + spec.type + "'");
}

InfluenceGraph parse_graph_json(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("graph: not valid JSON: ") + err.what());
  }
  try {
    return parse_graph(root);
  } catch (const json::exception& err) {
    throw std::invalid_argument(std::string("graph: ") + err.what());
  }
}

}  // namespace otslab
