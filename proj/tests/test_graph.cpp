#include <doctest.h>

#include <algorithm>
#include <set>

#include "otslab/graph.hpp"
#include "otslab/presets.hpp"
#include "otslab/rng.hpp"

using namespace otslab;

namespace {

// Brute-force reachability closure, independent of the library's SCC.
bool brute_strongly_connected(const InfluenceGraph& g) {
  const int n = g.agent_count();
  std::vector<std::vector<char>> reach(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) reach[i][i] = 1;
  for (const auto& e : g.edges()) reach[e.from][e.to] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!reach[i][j]) return false;
    }
  }
  return true;
}

// Independent simple-path enumeration over (from,to) adjacency.
void brute_paths(const InfluenceGraph& g, int at, std::vector<char>& visited,
                 std::vector<int>& current, std::vector<std::vector<int>>& out) {
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).from != at) continue;
    const int to = g.edge(e).to;
    if (visited[static_cast<size_t>(to)]) continue;
    current.push_back(e);
    out.push_back(current);
    visited[static_cast<size_t>(to)] = 1;
    brute_paths(g, to, visited, current, out);
    visited[static_cast<size_t>(to)] = 0;
    current.pop_back();
  }
}

std::vector<std::vector<int>> brute_simple_paths(const InfluenceGraph& g, int start) {
  std::vector<std::vector<int>> out;
  std::vector<char> visited(static_cast<size_t>(g.agent_count()), 0);
  visited[static_cast<size_t>(start)] = 1;
  std::vector<int> current;
  brute_paths(g, start, visited, current, out);
  return out;
}

std::set<std::string> path_labels(const InfluenceGraph& g,
                                  const std::vector<GPath>& paths) {
  std::set<std::string> out;
  for (const auto& p : paths) {
    std::string s;
    for (int e : p.edges) s += g.edge(e).label;
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST_CASE("validate accepts the two-pole chain and reports violations") {
  CHECK(validate(chain3_graph(0.5)).ok());

  InfluenceGraph zero_weight(3, {{0, 1, "a"}, {1, 0, "b"}, {2, 1, "c"}, {1, 2, "d"}},
                             {0.0, 0.5, 0.5, 0.5});
  const auto report = validate(zero_weight);
  REQUIRE(report.problems.size() == 1);
  CHECK(report.problems[0].find("weight not in (0,1]") != std::string::npos);

  InfluenceGraph self_loop(2, {{0, 0, "a"}, {0, 1, "b"}}, {0.5, 0.5});
  const auto loops = validate(self_loop);
  REQUIRE(loops.problems.size() == 1);
  CHECK(loops.problems[0].find("self-loop") != std::string::npos);

  InfluenceGraph dup(2, {{0, 1, "a"}, {0, 1, "a"}}, {0.5, 0.5});
  CHECK(validate(dup).problems.size() == 2);  // duplicate edge and duplicate label

  InfluenceGraph tiny(1, {}, {});
  CHECK_FALSE(validate(tiny).ok());
}

TEST_CASE("strong connectivity on the named graphs") {
  CHECK(is_strongly_connected(chain3_graph(0.5)));
  CHECK(is_strongly_connected(chain4_graph(0.5)));
  CHECK_FALSE(is_strongly_connected(grouped6_graph()));
  CHECK(is_strongly_connected(pair_graph(0.5)));

  InfluenceGraph one_way(2, {{0, 1, "a"}}, {0.5});
  CHECK_FALSE(is_strongly_connected(one_way));
}

TEST_CASE("strong connectivity agrees with the reachability closure") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const auto g = random_graph(n, 0.25 + 0.05 * (seed % 10), 0.5, seed);
    CAPTURE(seed);
    CHECK(is_strongly_connected(g) == brute_strongly_connected(g));
  }
}

TEST_CASE("puppet freedom follows the maximal weight") {
  CHECK(is_puppet_free(chain3_graph(0.5)));
  CHECK_FALSE(is_puppet_free(chain3_graph(1.0)));
  CHECK(is_puppet_free(pair_graph(0.999)));

  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = random_graph(4, 0.6, seed % 2 ? 0.5 : 1.0, seed);
    if (g.edge_count() == 0) continue;
    CHECK(is_puppet_free(g) == (influence_extrema(g).second < 1.0));
  }
}

TEST_CASE("simple paths from the worked example") {
  const auto g = chain3_graph(0.5);
  CHECK(path_labels(g, simple_paths_from(g, 0)) == std::set<std::string>{"a", "ad"});
  CHECK(path_labels(g, simple_paths_from(g, 2)) == std::set<std::string>{"c", "cb"});

  InfluenceGraph sink(2, {{0, 1, "a"}}, {0.5});
  CHECK(simple_paths_from(sink, 1).empty());
}

TEST_CASE("simple paths match brute-force enumeration and chain correctly") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const auto g = random_graph(n, 0.5, 0.5, seed);
    for (int start = 0; start < n; ++start) {
      const auto paths = simple_paths_from(g, start);
      const auto expected = brute_simple_paths(g, start);
      CAPTURE(seed);
      CAPTURE(start);
      REQUIRE(paths.size() == expected.size());
      for (const auto& p : paths) {
        CHECK(is_gpath(g, p));
        CHECK(p.length() <= static_cast<size_t>(n - 1));
      }
    }
  }
}

TEST_CASE("influence extrema") {
  const auto g = chain3_graph(0.5);
  CHECK(influence_extrema(g) == std::pair<double, double>{0.5, 0.5});

  InfluenceGraph mixed(3, {{0, 1, "x"}, {1, 2, "y"}, {2, 0, "z"}}, {0.2, 0.7, 0.9});
  CHECK(influence_extrema(mixed) == std::pair<double, double>{0.2, 0.9});

  InfluenceGraph single(2, {{0, 1, "a"}}, {1.0});
  CHECK(influence_extrema(single) == std::pair<double, double>{1.0, 1.0});

  InfluenceGraph empty(2, {}, {});
  CHECK_THROWS_AS(influence_extrema(empty), std::invalid_argument);
}

TEST_CASE("random graphs are pure functions of their arguments") {
  const auto a = random_graph(6, 0.4, 0.5, 99);
  const auto b = random_graph(6, 0.4, 0.5, 99);
  REQUIRE(a.edge_count() == b.edge_count());
  for (int e = 0; e < a.edge_count(); ++e) {
    CHECK(a.edge(e).from == b.edge(e).from);
    CHECK(a.edge(e).to == b.edge(e).to);
    CHECK(a.edge(e).label == b.edge(e).label);
  }

  const auto complete = random_graph(5, 1.0, 0.5, 1);
  CHECK(complete.edge_count() == 5 * 4);
  CHECK(validate(complete).ok());

  CHECK_THROWS_AS(random_graph(1, 0.5, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_graph(3, 0.0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_graph(3, 0.5, 1.5, 1), std::invalid_argument);
}

TEST_CASE("edge lookup by label and endpoints") {
  const auto g = chain4_graph(0.5);
  REQUIRE(g.edge_by_label("f").has_value());
  CHECK(g.edge(*g.edge_by_label("f")).from == 2);
  CHECK(g.edge(*g.edge_by_label("f")).to == 3);
  CHECK_FALSE(g.edge_by_label("zz").has_value());
  CHECK(g.edge_between(1, 0) == g.edge_by_label("b"));
  CHECK_FALSE(g.edge_between(0, 3).has_value());
}
