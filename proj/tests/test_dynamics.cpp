#include <doctest.h>

#include <cmath>
#include <limits>

#include "otslab/dynamics.hpp"
#include "otslab/presets.hpp"
#include "otslab/rng.hpp"

using namespace otslab;

TEST_CASE("clamp01") {
  CHECK(clamp01(0.3) == 0.3);
  CHECK(clamp01(-2.0) == 0.0);
  CHECK(clamp01(1.7) == 1.0);
  CHECK(clamp01(0.0) == 0.0);
  CHECK(clamp01(1.0) == 1.0);
  CHECK_THROWS_AS(clamp01(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(clamp01(std::nan("")), std::invalid_argument);
}

TEST_CASE("step follows the worked four-step run bit-exactly") {
  const auto g = chain3_graph(0.5);
  const auto inf = InfluenceFunction::static_weights();
  OpinionState s(std::vector<double>{0.0, 0.5, 1.0});

  s = step(s, *g.edge_by_label("a"), inf, g);
  CHECK(s == OpinionState{{0.0, 0.25, 1.0}});
  s = step(s, *g.edge_by_label("b"), inf, g);
  CHECK(s == OpinionState{{0.125, 0.25, 1.0}});
  s = step(s, *g.edge_by_label("c"), inf, g);
  CHECK(s == OpinionState{{0.125, 0.625, 1.0}});
  s = step(s, *g.edge_by_label("d"), inf, g);
  CHECK(s == OpinionState{{0.125, 0.625, 0.8125}});
}

TEST_CASE("step edge cases") {
  const auto g = chain3_graph(0.5);
  const auto inf = InfluenceFunction::static_weights();

  // equal endpoints: no movement for any influence value
  OpinionState flat(std::vector<double>{0.3, 0.3, 0.9});
  CHECK(step(flat, *g.edge_by_label("a"), inf, g) == flat);

  // full influence adopts the source opinion exactly
  const auto puppet = chain3_graph(1.0);
  OpinionState s(std::vector<double>{0.1, 0.7, 0.9});
  const auto after = step(s, *puppet.edge_by_label("a"), inf, puppet);
  CHECK(after[1] == 0.1);

  CHECK_THROWS_AS(step(s, 17, inf, g), std::invalid_argument);
  OpinionState bad(std::vector<double>{0.1, 2.0, 0.9});
  CHECK_THROWS_AS(step(bad, 0, inf, g), std::invalid_argument);
}

TEST_CASE("step changes exactly one component and stays within the extremes") {
  const auto g = random_graph(6, 0.7, 0.7, 11);
  const auto inf = InfluenceFunction::confirmation_bias();
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values;
    for (int i = 0; i < 6; ++i) values.push_back(rng.uniform01());
    const OpinionState before(values);
    const int e = static_cast<int>(rng.uniform01() * g.edge_count());
    const auto after = step(before, e, inf, g);
    const auto target = static_cast<size_t>(g.edge(e).to);
    for (size_t i = 0; i < before.size(); ++i) {
      if (i != target) CHECK(after[i] == before[i]);
    }
    CHECK(after[target] >= before.min());
    CHECK(after[target] <= before.max());
    // purity: bit-identical on replay
    CHECK(step(before, e, inf, g) == after);
  }
}

TEST_CASE("confirmation bias") {
  const auto g = chain3_graph(0.5);
  const int a = *g.edge_by_label("a");  // 1 -> 2
  CHECK(confirmation_bias(g, a, OpinionState{{0.4, 0.4, 0.0}}) == 1.0);
  CHECK(confirmation_bias(g, a, OpinionState{{0.0, 1.0, 0.0}}) == 0.0);
  CHECK(confirmation_bias(g, a, OpinionState{{0.2, 0.5, 0.0}}) == doctest::Approx(0.7));
}

TEST_CASE("bounded scaling") {
  CHECK(bounded_scale(0.0, 0.1, 0.9) == doctest::Approx(0.1));
  CHECK(bounded_scale(1.0, 0.1, 0.9) == doctest::Approx(0.9));
  CHECK(bounded_scale(0.5, 0.2, 0.6) == doctest::Approx(0.4));
  CHECK_THROWS_AS(bounded_scale(0.5, 0.9, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(bounded_scale(0.5, 0.0, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(bounded_scale(1.5, 0.1, 0.9), std::invalid_argument);

  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const double v = bounded_scale(rng.uniform01(), 0.1, 0.9);
    CHECK(v >= 0.1);
    CHECK(v <= 0.9);
  }
}

TEST_CASE("polarizing pair influence evaluates the clamped expressions") {
  const OpinionState s(std::vector<double>{0.0, 1.0});
  CHECK(polarizing_pair_influence("a", s, 0.2, 0.8) == doctest::Approx(0.1));
  CHECK(polarizing_pair_influence("b", s, 0.2, 0.8) == doctest::Approx(0.1));

  const OpinionState tie(std::vector<double>{0.4, 0.4});
  CHECK(polarizing_pair_influence("a", tie, 0.2, 0.8) == 0.5);
  CHECK(polarizing_pair_influence("b", tie, 0.2, 0.8) == 0.5);

  CHECK_THROWS_AS(polarizing_pair_influence("c", s, 0.2, 0.8), std::invalid_argument);
}

TEST_CASE("polarizing triple influence evaluates the clamped expressions") {
  const OpinionState s(std::vector<double>{0.0, 0.5, 1.0});
  CHECK(polarizing_triple_influence("b", s, 0.2, 0.8) == 0.5);
  CHECK(polarizing_triple_influence("d", s, 0.2, 0.8) == 0.5);
  CHECK(polarizing_triple_influence("a", s, 0.2, 0.8) == doctest::Approx(0.8));

  const OpinionState tie(std::vector<double>{0.1, 0.6, 0.6});
  CHECK(polarizing_triple_influence("c", tie, 0.2, 0.8) == 0.5);
  const OpinionState tie12(std::vector<double>{0.6, 0.6, 0.9});
  CHECK(polarizing_triple_influence("a", tie12, 0.2, 0.8) == 0.5);

  CHECK_THROWS_AS(polarizing_triple_influence("e", s, 0.2, 0.8),
                  std::invalid_argument);
}

TEST_CASE("influence function variants") {
  const auto g = chain3_graph(0.5);
  const OpinionState s(std::vector<double>{0.0, 0.5, 1.0});

  const auto stat = InfluenceFunction::static_weights();
  CHECK_FALSE(stat.dynamic());
  CHECK(stat(g, 0, s) == 0.5);
  REQUIRE(stat.rate_bounds(g).has_value());
  CHECK(*stat.rate_bounds(g) == std::pair<double, double>{0.5, 0.5});

  const auto bias = InfluenceFunction::confirmation_bias();
  CHECK(bias.dynamic());
  CHECK(bias(g, *g.edge_by_label("a"), s) == doctest::Approx(0.5));
  CHECK_FALSE(bias.rate_bounds(g).has_value());

  const auto scaled = bias.bounded_into(0.1, 0.9);
  CHECK(scaled.dynamic());
  CHECK(scaled.scaled());
  REQUIRE(scaled.rate_bounds(g).has_value());
  CHECK(*scaled.rate_bounds(g) == std::pair<double, double>{0.1, 0.9});
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> values{rng.uniform01(), rng.uniform01(), rng.uniform01()};
    const double v = scaled(g, static_cast<int>(rng.uniform01() * 4), OpinionState{values});
    CHECK(v >= 0.1);
    CHECK(v <= 0.9);
  }

  const auto table = InfluenceFunction::table(
      [](const InfluenceGraph&, int, const OpinionState& state) {
        return state[0] > 0.5 ? 0.25 : 0.75;
      });
  CHECK(table.dynamic());
  CHECK(table(g, 0, s) == 0.75);
  CHECK_THROWS_AS(InfluenceFunction::static_weights().bounded_into(0.9, 0.1),
                  std::invalid_argument);
}
