#include <doctest.h>

#include <cstring>
#include <sstream>

#include "otslab/analysis.hpp"
#include "otslab/config.hpp"
#include "otslab/presets.hpp"
#include "otslab/svg_plot.hpp"
#include "otslab/trace_csv.hpp"

using namespace otslab;

namespace {

const char* kChainConfig = R"({
  "graph": {"agents": 3, "edges": [
    {"from": 1, "to": 2, "label": "a", "weight": 0.5},
    {"from": 2, "to": 1, "label": "b", "weight": 0.5},
    {"from": 3, "to": 2, "label": "c", "weight": 0.5},
    {"from": 2, "to": 3, "label": "d", "weight": 0.5}]},
  "initial": [0, 0.5, 1],
  "influence": {"mode": "static"},
  "scheduler": {"type": "periodic", "word": ["a", "b", "c", "d"]},
  "steps": 8,
  "tolerance": 1e-6,
  "seed": 11
})";

std::string patched(const std::string& base, const std::string& needle,
                    const std::string& replacement) {
  std::string out = base;
  const auto at = out.find(needle);
  REQUIRE(at != std::string::npos);
  out.replace(at, needle.size(), replacement);
  return out;
}

}  // namespace

TEST_CASE("config parsing, strictness, and 1-based conversion") {
  const auto config = parse_config(kChainConfig);
  CHECK(config.graph.agent_count() == 3);
  CHECK(config.graph.edge(0).from == 0);
  CHECK(config.graph.edge(0).to == 1);
  CHECK(config.steps == 8);
  CHECK(config.seed == 11);
  CHECK(config.tolerance == 1e-6);

  CHECK_THROWS_AS(parse_config("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(patched(kChainConfig, "\"steps\": 8",
                                       "\"steps\": 8, \"stepz\": 9")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(patched(kChainConfig, "\"label\": \"a\"",
                                       "\"label\": \"a\", \"colour\": \"red\"")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(patched(kChainConfig, "[0, 0.5, 1]", "[0, 0.5]")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(patched(kChainConfig, "[0, 0.5, 1]", "[0, 0.5, 7]")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(patched(kChainConfig, "\"weight\": 0.5}]},",
                                       "\"weight\": 1.5}]},")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config(patched(kChainConfig, "[\"a\", \"b\", \"c\", \"d\"]",
                           "[\"a\", \"q\"]")),
      std::invalid_argument);
}

TEST_CASE("influence and scheduler sections cover every mode") {
  auto cfg = parse_config(patched(
      kChainConfig, "{\"mode\": \"static\"}",
      "{\"mode\": \"confirmation_bias\", \"scaled\": {\"IL\": 0.1, \"IU\": 0.9}}"));
  REQUIRE(cfg.influence.scaled.has_value());
  const auto inf = make_influence(cfg);
  CHECK(inf.dynamic());
  CHECK(inf.rate_bounds(cfg.graph) == std::pair<double, double>{0.1, 0.9});

  auto rand_cfg = parse_config(patched(
      kChainConfig, "{\"type\": \"periodic\", \"word\": [\"a\", \"b\", \"c\", \"d\"]}",
      "{\"type\": \"random\", \"seed\": 42, "
      "\"probs\": {\"a\": 1, \"b\": 1, \"c\": 1, \"d\": 1}}"));
  CHECK(rand_cfg.scheduler.seed == 42);
  CHECK(make_scheduler(rand_cfg)->describe() == "random(seed=42)");

  auto shuttle_cfg = parse_config(patched(
      kChainConfig, "{\"type\": \"periodic\", \"word\": [\"a\", \"b\", \"c\", \"d\"]}",
      "{\"type\": \"cons12\", \"L\": 0.25, \"U\": 0.75, \"guard\": 1000000}"));
  CHECK(make_scheduler(shuttle_cfg)->describe().substr(0, 7) == "shuttle");

  auto extend_cfg = parse_config(patched(
      kChainConfig, "{\"type\": \"periodic\", \"word\": [\"a\", \"b\", \"c\", \"d\"]}",
      "{\"type\": \"extend\", \"prefix\": [\"c\", \"c\", \"d\"]}"));
  CHECK(make_scheduler(extend_cfg)->tag().k == 7);

  auto growing_cfg = parse_config(patched(
      kChainConfig, "{\"type\": \"periodic\", \"word\": [\"a\", \"b\", \"c\", \"d\"]}",
      "{\"type\": \"growing_blocks\", \"start_n\": 3}"));
  CHECK(make_scheduler(growing_cfg)->describe().substr(0, 14) == "growing_blocks");

  CHECK_THROWS_AS(parse_config(patched(kChainConfig, "\"mode\": \"static\"",
                                       "\"mode\": \"telepathy\"")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config(patched(kChainConfig, "\"type\": \"periodic\"",
                           "\"type\": \"clairvoyant\"")),
      std::invalid_argument);
}

TEST_CASE("config round-trips through its JSON form") {
  for (const auto& id : preset_ids()) {
    const auto preset = reproduce_preset(id);
    const auto round = parse_config(config_to_json(preset.config));
    CAPTURE(id);
    CHECK(round.graph.agent_count() == preset.config.graph.agent_count());
    CHECK(round.graph.edge_count() == preset.config.graph.edge_count());
    CHECK(round.initial == preset.config.initial);
    CHECK(round.influence.mode == preset.config.influence.mode);
    CHECK(round.scheduler.type == preset.config.scheduler.type);
    CHECK(round.steps == preset.config.steps);
  }
}

TEST_CASE("trace CSV round-trips bit-exactly") {
  const auto g = chain3_graph(0.5);
  const auto inf = InfluenceFunction::static_weights();
  auto sched = random_scheduler(g, {}, 3);
  const auto trace = execute(g, OpinionState{{0.0, 0.5, 1.0}}, inf, *sched, 300);

  std::stringstream buffer;
  write_trace_csv(buffer, trace, g);

  const auto parsed = parse_trace_csv(buffer);
  CHECK(parsed.agent_count == 3);
  REQUIRE(parsed.states.size() == trace.steps());
  REQUIRE(parsed.initial.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(std::memcmp(&parsed.initial.values[i], &trace.initial.values[i],
                      sizeof(double)) == 0);
  }
  for (size_t t = 0; t < trace.steps(); ++t) {
    CHECK(parsed.actions[t] == g.edge(trace.actions[t]).label);
    for (size_t i = 0; i < 3; ++i) {
      CHECK(std::memcmp(&parsed.states[t].values[i], &trace.states[t].values[i],
                        sizeof(double)) == 0);
    }
  }
}

TEST_CASE("trace CSV header and initial row format") {
  const auto g = pair_graph(0.5);
  const auto inf = InfluenceFunction::static_weights();
  auto sched = periodic_scheduler(g, {"a", "b"});
  const auto trace = execute(g, OpinionState{{0.0, 1.0}}, inf, *sched, 2);
  std::stringstream buffer;
  write_trace_csv(buffer, trace, g);
  std::string line;
  std::getline(buffer, line);
  CHECK(line == "t,action,B1,B2");
  std::getline(buffer, line);
  CHECK(line == "0,,0,1");
  std::getline(buffer, line);
  CHECK(line == "1,a,0,0.5");

  std::stringstream bad("x,y\n");
  CHECK_THROWS_AS(parse_trace_csv(bad), std::runtime_error);
  std::stringstream empty("");
  CHECK_THROWS_AS(parse_trace_csv(empty), std::runtime_error);
}

TEST_CASE("svg plots are self-contained with one polyline per agent") {
  const auto g = chain3_graph(0.5);
  const auto inf = InfluenceFunction::static_weights();
  auto sched = periodic_scheduler(g, {"a", "b", "c", "d"});
  const auto trace = execute(g, OpinionState{{0.0, 0.5, 1.0}}, inf, *sched, 12000);

  std::stringstream buffer;
  write_trace_svg(buffer, trace, g, "demo", false);
  const std::string svg = buffer.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.find("<image") == std::string::npos);

  size_t polylines = 0;
  for (size_t at = svg.find("<polyline"); at != std::string::npos;
       at = svg.find("<polyline", at + 1)) {
    ++polylines;
  }
  CHECK(polylines == 3);

  // downsampling: no polyline carries more than ~4000 points
  size_t worst = 0;
  size_t start = 0;
  while ((start = svg.find("points=\"", start)) != std::string::npos) {
    const size_t end = svg.find('"', start + 8);
    worst = std::max(worst, static_cast<size_t>(std::count(
                                svg.begin() + static_cast<std::ptrdiff_t>(start),
                                svg.begin() + static_cast<std::ptrdiff_t>(end), ' ')));
    start = end;
  }
  CHECK(worst <= 4001);

  // dynamic runs add influence series
  const auto dyn_inf = InfluenceFunction::polarizing_pair(0.2, 0.8);
  const auto pair = pair_graph(0.5);
  auto pair_sched = periodic_scheduler(pair, {"a", "b"});
  const auto dyn_trace = execute(pair, OpinionState{{0.0, 1.0}}, dyn_inf, *pair_sched, 50);
  std::stringstream dyn_buffer;
  write_trace_svg(dyn_buffer, dyn_trace, pair, "demo", true);
  const std::string dyn_svg = dyn_buffer.str();
  size_t dyn_polylines = 0;
  for (size_t at = dyn_svg.find("<polyline"); at != std::string::npos;
       at = dyn_svg.find("<polyline", at + 1)) {
    ++dyn_polylines;
  }
  CHECK(dyn_polylines == 4);  // 2 agents + 2 influence series
}

TEST_CASE("presets build and reject unknown ids") {
  for (const auto& id : preset_ids()) {
    const auto preset = reproduce_preset(id);
    CHECK(preset.id == id);
    CHECK(validate(preset.config.graph).ok());
    CHECK(preset.config.steps > 0);
  }
  try {
    reproduce_preset("fig9z");
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& ex) {
    const std::string what = ex.what();
    CHECK(what.find("valid ids") != std::string::npos);
    CHECK(what.find("fig1b") != std::string::npos);
    CHECK(what.find("fig5d") != std::string::npos);
  }
}

TEST_CASE("malformed configs throw cleanly") {
  const std::vector<std::string> broken = {
      "",
      "null",
      "[]",
      "42",
      "{\"graph\": 3}",
      "{\"graph\": {\"agents\": \"three\", \"edges\": []}}",
      R"({"graph": {"agents": 2, "edges": [{"from":1,"to":2,"label":"a","weight":0.5}]},
          "initial": [0,1], "influence": {"mode":"static"},
          "scheduler": {"type":"periodic"}, "steps": 1})",
      R"({"graph": {"agents": 2, "edges": [{"from":1,"to":2,"label":"a","weight":0.5}]},
          "initial": "zero", "influence": {"mode":"static"},
          "scheduler": {"type":"periodic","word":["a"]}, "steps": 1})",
      R"({"graph": {"agents": 2, "edges": [{"from":1,"to":9,"label":"a","weight":0.5}]},
          "initial": [0,1], "influence": {"mode":"static"},
          "scheduler": {"type":"periodic","word":["a"]}, "steps": 1})",
  };
  for (const auto& text : broken) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_config(text), std::invalid_argument);
  }
}

TEST_CASE("the frozen random scenario stays strongly connected") {
  const auto preset = reproduce_preset("fig1c");
  CHECK(preset.config.graph.agent_count() == 11);
  CHECK(is_strongly_connected(preset.config.graph));
  CHECK(is_puppet_free(preset.config.graph));
}

TEST_CASE("graph segment parses standalone") {
  const auto g = parse_graph_json(
      R"({"agents": 2, "edges": [{"from":1,"to":2,"label":"x","weight":0.3},
                                  {"from":2,"to":1,"label":"y","weight":0.7}]})");
  CHECK(g.agent_count() == 2);
  CHECK(g.edge_by_label("y").has_value());
  CHECK_THROWS_AS(parse_graph_json(R"({"agents": 2})"), std::invalid_argument);
}
