#include "otslab/presets.hpp"

#include <stdexcept>

namespace otslab {

InfluenceGraph chain3_graph(double weight) {
  std::vector<Edge> edges = {{0, 1, "a"}, {1, 0, "b"}, {2, 1, "c"}, {1, 2, "d"}};
  return InfluenceGraph(3, std::move(edges), std::vector<double>(4, weight));
}

InfluenceGraph chain4_graph(double weight) {
  std::vector<Edge> edges = {{0, 1, "a"}, {1, 0, "b"}, {2, 1, "c"},
                             {1, 2, "d"}, {3, 2, "e"}, {2, 3, "f"}};
  return InfluenceGraph(4, std::move(edges), std::vector<double>(6, weight));
}

InfluenceGraph grouped6_graph() {
  std::vector<Edge> edges = {{0, 1, "a0"}, {1, 0, "a1"}, {2, 3, "a2"}, {3, 2, "a3"},
                             {4, 5, "a4"}, {5, 4, "a5"}, {4, 2, "a6"}, {5, 3, "a7"},
                             {0, 2, "a8"}, {1, 3, "a9"}};
  return InfluenceGraph(6, std::move(edges), std::vector<double>(10, 0.5));
}

InfluenceGraph pair_graph(double weight) {
  std::vector<Edge> edges = {{0, 1, "a"}, {1, 0, "b"}};
  return InfluenceGraph(2, std::move(edges), std::vector<double>(2, weight));
}

namespace {

constexpr uint64_t kRandom11Seed = 4;  // picked for strong connectivity

std::vector<std::string> repeat_pattern(
    const std::vector<std::pair<std::string, int>>& groups) {
  std::vector<std::string> word;
  for (const auto& [labels, times] : groups) {
    for (int r = 0; r < times; ++r) {
      std::string label;
      for (char c : labels) {
        if (c == ' ') {
          word.push_back(label);
          label.clear();
        } else {
          label += c;
        }
      }
      if (!label.empty()) word.push_back(label);
    }
  }
  return word;
}

ExperimentConfig base_config(InfluenceGraph graph, std::vector<double> initial,
                             size_t steps) {
  ExperimentConfig config;
  config.graph = std::move(graph);
  config.initial = OpinionState(std::move(initial));
  config.influence.mode = "static";
  config.steps = steps;
  config.tolerance = 1e-6;
  return config;
}

ReproducePreset build_preset(const std::string& id) {
  ReproducePreset preset;
  preset.id = id;

  if (id == "fig1b") {
    preset.description = "three-agent chain, periodic word (abcd), consensus at 0.5";
    preset.config = base_config(chain3_graph(0.5), {0.0, 0.5, 1.0}, 2000);
    preset.config.scheduler.type = "periodic";
    preset.config.scheduler.word = {"a", "b", "c", "d"};
    return preset;
  }
  if (id == "fig1c") {
    preset.description =
        "random 11-agent graph (edge probability 0.3, weight 0.5), uniform random word";
    std::vector<double> initial;
    for (int i = 0; i <= 10; ++i) initial.push_back(i / 10.0);
    preset.config =
        base_config(random_graph(11, 0.3, 0.5, kRandom11Seed), std::move(initial), 3000);
    preset.config.seed = kRandom11Seed;
    preset.config.scheduler.type = "random";
    preset.config.scheduler.seed = kRandom11Seed;
    return preset;
  }
  if (id == "fig2b") {
    preset.description =
        "six agents in three groups, grouped periodic word; the closed groups settle "
        "on different values";
    preset.config = base_config(grouped6_graph(), {0.4, 0.5, 0.45, 0.55, 0.5, 0.6}, 6800);
    preset.config.scheduler.type = "periodic";
    preset.config.scheduler.word = repeat_pattern(
        {{"a2 a3", 5}, {"a4 a5", 5}, {"a0 a1", 5}, {"a6 a7 a8 a9", 1}});
    return preset;
  }
  if (id == "fig2c") {
    preset.description =
        "three-agent chain with full-strength influence: the middle agent swings "
        "between the poles";
    preset.config = base_config(chain3_graph(1.0), {0.0, 0.5, 1.0}, 100);
    preset.config.scheduler.type = "periodic";
    preset.config.scheduler.word = {"a", "b", "c", "d"};
    return preset;
  }
  if (id == "fig3a") {
    preset.description = "three-agent chain, growing blocks a^n b c^n d";
    preset.config = base_config(chain3_graph(0.5), {0.0, 0.5, 1.0}, 2400);
    preset.config.scheduler.type = "growing_blocks";
    return preset;
  }
  if (id == "fig3b") {
    preset.description =
        "three-agent chain, state-feedback shuttle with L=0.25, U=0.75: strongly "
        "fair but no consensus";
    preset.config = base_config(chain3_graph(0.5), {0.0, 0.5, 1.0}, 2000);
    preset.config.scheduler.type = "cons12";
    preset.config.scheduler.lower = 0.25;
    preset.config.scheduler.upper = 0.75;
    return preset;
  }
  if (id == "fig4b") {
    preset.description =
        "four-agent chain, windowed shuttle with L=0.2, U=0.8: 1-bounded fair but "
        "no consensus";
    preset.config = base_config(chain4_graph(0.5), {0.0, 0.2, 0.8, 1.0}, 2000);
    preset.config.scheduler.type = "cons23";
    preset.config.scheduler.lower = 0.2;
    preset.config.scheduler.upper = 0.8;
    return preset;
  }
  if (id == "fig4c") {
    preset.description =
        "four-agent chain, periodic (bfdace)^3 a^10 e^10: 3-bounded fair, consensus";
    preset.config = base_config(chain4_graph(0.5), {0.0, 0.2, 0.8, 1.0}, 5000);
    preset.config.scheduler.type = "periodic";
    preset.config.scheduler.word =
        repeat_pattern({{"b f d a c e", 3}, {"a", 10}, {"e", 10}});
    return preset;
  }
  if (id == "fig5c") {
    preset.description =
        "two agents with polarizing dynamic influence (L=0.2, U=0.8), word (ab): "
        "opinions pin at U and L, influences decay to 0";
    preset.config = base_config(pair_graph(0.5), {0.0, 1.0}, 400);
    preset.config.influence.mode = "fig5a";
    preset.config.influence.lower = 0.2;
    preset.config.influence.upper = 0.8;
    preset.config.scheduler.type = "periodic";
    preset.config.scheduler.word = {"a", "b"};
    preset.plot_influences = true;
    return preset;
  }
  if (id == "fig5d") {
    preset.description =
        "three agents with polarizing dynamic influence (L=0.2, U=0.8), word (abcd): "
        "the middle agent see-saws, the poles stay apart";
    preset.config = base_config(chain3_graph(0.5), {0.0, 0.5, 1.0}, 600);
    preset.config.influence.mode = "fig5b";
    preset.config.influence.lower = 0.2;
    preset.config.influence.upper = 0.8;
    preset.config.scheduler.type = "periodic";
    preset.config.scheduler.word = {"a", "b", "c", "d"};
    preset.plot_influences = true;
    return preset;
  }

  std::string msg = "unknown figure id '" + id + "'; valid ids:";
  for (const auto& valid : preset_ids()) msg += " " + valid;
  throw std::invalid_argument(msg);
}

}  // namespace

std::vector<std::string> preset_ids() {
  return {"fig1b", "fig1c", "fig2b", "fig2c", "fig3a",
          "fig3b", "fig4b", "fig4c", "fig5c", "fig5d"};
}

ReproducePreset reproduce_preset(const std::string& id) { return build_preset(id); }

}  // namespace otslab
