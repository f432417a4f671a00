#include <doctest.h>

#include <algorithm>
#include <set>

#include "otslab/fairness.hpp"
#include "otslab/presets.hpp"
#include "otslab/rng.hpp"
#include "otslab/words.hpp"

using namespace otslab;

namespace {

WordPrefix cycle_word(const std::vector<int>& pattern, int alphabet, size_t length) {
  std::vector<int> symbols;
  symbols.reserve(length);
  for (size_t i = 0; i < length; ++i) symbols.push_back(pattern[i % pattern.size()]);
  return WordPrefix::from_indices(std::move(symbols), alphabet);
}

// Exhaustive reference for minimal_uniform_k.
std::optional<size_t> brute_minimal_uniform_k(const WordPrefix& prefix) {
  for (size_t k = 1; k <= prefix.size(); ++k) {
    bool all = true;
    for (size_t s = 0; s + k <= prefix.size(); ++s) {
      std::set<int> seen(prefix.symbols.begin() + static_cast<std::ptrdiff_t>(s),
                         prefix.symbols.begin() + static_cast<std::ptrdiff_t>(s + k));
      if (static_cast<int>(seen.size()) != prefix.alphabet_size) {
        all = false;
        break;
      }
    }
    if (all) return k;
  }
  return std::nullopt;
}

WordPrefix random_word(int alphabet, size_t length, uint64_t seed) {
  Rng rng(seed);
  std::vector<int> symbols;
  symbols.reserve(length);
  for (size_t i = 0; i < length; ++i) {
    symbols.push_back(static_cast<int>(rng.uniform01() * alphabet));
  }
  return WordPrefix::from_indices(std::move(symbols), alphabet);
}

}  // namespace

TEST_CASE("window completeness") {
  const auto w = cycle_word({0, 1, 2, 3}, 4, 12);
  CHECK(window_complete(w, 0, 4));
  CHECK(window_complete(w, 3, 4));
  CHECK_FALSE(window_complete(w, 0, 3));  // below alphabet size

  const auto partial = WordPrefix::from_indices({0, 0, 1, 1}, 4);
  CHECK_FALSE(window_complete(partial, 0, 4));

  CHECK_THROWS_AS(window_complete(partial, 2, 4), std::out_of_range);
}

TEST_CASE("minimal uniform window size") {
  CHECK(minimal_uniform_k(cycle_word({0, 1, 2, 3}, 4, 400)) == 4);
  CHECK(minimal_uniform_k(cycle_word({0, 1, 2, 3}, 4, 4)) == 4);
  CHECK_FALSE(minimal_uniform_k(WordPrefix::from_indices({0, 1, 0, 1}, 3)).has_value());

  for (uint64_t seed = 1; seed <= 30; ++seed) {
    const auto w = random_word(3, 40 + seed % 60, seed);
    CAPTURE(seed);
    CHECK(minimal_uniform_k(w) == brute_minimal_uniform_k(w));
  }
}

TEST_CASE("per-symbol maximum gaps") {
  const auto w = cycle_word({0, 1, 2, 3}, 4, 40);
  for (size_t gap : max_symbol_gaps(w)) CHECK(gap == 4);

  const auto missing = WordPrefix::from_indices({0, 1, 0, 1, 0}, 3);
  const auto gaps = max_symbol_gaps(missing);
  CHECK(gaps[2] == 6);  // |prefix| + 1
  CHECK(gaps[0] == 2);
  CHECK(gaps[1] == 2);
}

TEST_CASE("multi-window scan") {
  // all windows of the round-robin are complete, so every start is a hit
  const auto w = cycle_word({0, 1, 2, 3}, 4, 40);
  const auto hits = find_multiwindows(w, 2, 4);
  REQUIRE(hits.size() == 40 - 8 + 1);
  CHECK(hits.front() == 0);

  const auto mono = WordPrefix::from_indices(std::vector<int>(30, 0), 2);
  CHECK(find_multiwindows(mono, 1, 4).empty());

  CHECK_THROWS_AS(find_multiwindows(w, 0, 4), std::invalid_argument);
}

TEST_CASE("the mixed periodic pattern holds a (3,6) multi-window at every period") {
  const auto g = chain4_graph(0.5);
  std::vector<std::string> pattern;
  for (int r = 0; r < 3; ++r) {
    for (const char* l : {"b", "f", "d", "a", "c", "e"}) pattern.push_back(l);
  }
  pattern.insert(pattern.end(), 10, "a");
  pattern.insert(pattern.end(), 10, "e");

  auto sched = periodic_scheduler(g, pattern);
  const auto word = WordPrefix::from_indices(take_word(*sched, 380), 6);
  const auto hits = find_multiwindows(word, 3, 6);
  REQUIRE_FALSE(hits.empty());
  for (size_t s = 0; s + 18 <= word.size(); s += 38) {
    CHECK(std::binary_search(hits.begin(), hits.end(), s));
  }
}

TEST_CASE("multi-window scan matches an exhaustive reference") {
  auto brute_hits = [](const WordPrefix& w, int m, size_t k) {
    std::vector<size_t> hits;
    for (size_t s = 0; s + static_cast<size_t>(m) * k <= w.size(); ++s) {
      bool all = true;
      for (int j = 0; j < m && all; ++j) {
        std::set<int> seen;
        for (size_t i = 0; i < k; ++i) {
          seen.insert(w.symbols[s + static_cast<size_t>(j) * k + i]);
        }
        all = static_cast<int>(seen.size()) == w.alphabet_size;
      }
      if (all) hits.push_back(s);
    }
    return hits;
  };
  auto brute_density = [&](const WordPrefix& w, int m, size_t k, size_t G) {
    const auto hits = brute_hits(w, m, k);
    for (size_t start = 0; start + G <= w.size(); ++start) {
      bool found = false;
      for (size_t h : hits) {
        if (h >= start && h < start + G) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };

  for (uint64_t seed = 1; seed <= 12; ++seed) {
    const int alphabet = 2 + static_cast<int>(seed % 3);
    const auto w = random_word(alphabet, 160 + 10 * (seed % 5), seed * 13);
    for (int m = 1; m <= 3; ++m) {
      for (size_t k = 2; k <= 6; k += 2) {
        CAPTURE(seed);
        CAPTURE(m);
        CAPTURE(k);
        CHECK(find_multiwindows(w, m, k) == brute_hits(w, m, k));
        const size_t G = static_cast<size_t>(m) * k + 7;
        if (G <= w.size()) {
          CHECK(density_check(w, m, k, G) == brute_density(w, m, k, G));
        }
      }
    }
  }
}

TEST_CASE("multi-window hits nest downward in m") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const auto w = random_word(2, 300, seed);
    for (int m = 1; m <= 3; ++m) {
      const auto more = find_multiwindows(w, m + 1, 3);
      const auto fewer = find_multiwindows(w, m, 3);
      for (size_t s : more) {
        CAPTURE(seed);
        CHECK(std::binary_search(fewer.begin(), fewer.end(), s));
      }
    }
  }
}

TEST_CASE("a fully uniform prefix contains multi-windows everywhere") {
  // minimal_uniform_k = k implies density at (1,k) and multi-window hits
  // for every m with m*k inside the prefix
  const auto w = cycle_word({0, 1, 2, 3}, 4, 120);
  const auto k = minimal_uniform_k(w);
  REQUIRE(k.has_value());
  CHECK(density_check(w, 1, *k, *k));
  for (int m = 1; m * *k <= 120; ++m) {
    CHECK_FALSE(find_multiwindows(w, m, *k).empty());
  }
}

TEST_CASE("density horizon check") {
  const auto w = cycle_word({0, 1, 2, 3}, 4, 100);
  CHECK(density_check(w, 2, 4, 12));
  CHECK_THROWS_AS(density_check(w, 2, 4, 7), std::invalid_argument);
  CHECK_THROWS_AS(density_check(w, 2, 4, 101), std::invalid_argument);

  // flood game word: fixed horizons eventually fail
  const auto g = chain3_graph(0.5);
  const auto game = banach_mazur_game(g, multiwindow_strategy(g, 1, 4),
                                      flood_opponent(g, "c"), 30, 1, 4);
  const auto word = WordPrefix::from_indices(game.word, g.edge_count());
  CHECK_FALSE(density_check(word, 1, 4, 24));
}

TEST_CASE("rotation-gap witness separates k-fair from (k+1)-fair") {
  const auto w = rotation_gap_witness(2, 4, 4000);
  CHECK(minimal_uniform_k(w) == 5);
  CHECK_FALSE(window_complete(w, 0, 4));
  for (size_t s = 0; s + 5 <= 200; ++s) CHECK(window_complete(w, s, 5));

  const auto wide = rotation_gap_witness(4, 6, 700);
  CHECK(minimal_uniform_k(wide) == 7);
}

TEST_CASE("power-of-two witness stays strongly fair but defeats every fixed k") {
  for (size_t h = 4; h <= 14; h += 2) {
    const size_t horizon = size_t{1} << h;
    const auto w = power_of_two_witness(horizon);
    // both symbols occur in the second half (and hence any longer suffix)
    const auto tail = std::vector<int>(w.symbols.begin() +
                                           static_cast<std::ptrdiff_t>(horizon / 2),
                                       w.symbols.end());
    CHECK(std::count(tail.begin(), tail.end(), 0) > 0);
    CHECK(std::count(tail.begin(), tail.end(), 1) > 0);
    // the minimal window size keeps doubling: horizon/2 exactly
    CAPTURE(h);
    CHECK(minimal_uniform_k(w) == std::max<size_t>(horizon / 2, 3));
  }
}

TEST_CASE("separated multi-window witness separates m from m+1") {
  const auto w = separated_multiwindow_witness(2, 4, 4800);
  CHECK(find_multiwindows(w, 3, 4).empty());
  const auto hits = find_multiwindows(w, 2, 4);
  REQUIRE_FALSE(hits.empty());
  for (size_t s = 0; s + 8 <= w.size(); s += 12) {
    CHECK(std::binary_search(hits.begin(), hits.end(), s));
  }

  const auto w35 = separated_multiwindow_witness(3, 5, 4000);
  CHECK(find_multiwindows(w35, 4, 5).empty());
  CHECK_FALSE(find_multiwindows(w35, 3, 5).empty());
}

TEST_CASE("the witness suite validates itself") {
  for (const auto& witness : hierarchy_witnesses()) {
    CAPTURE(witness.name);
    const auto w = witness.generate(4096);
    CHECK(witness.holds(w));
  }
}

TEST_CASE("fairness report aggregates the diagnostics") {
  const auto g = chain3_graph(0.5);
  auto sched = periodic_scheduler(g, {"a", "b", "c", "d"});
  const auto prefix = WordPrefix::from_indices(take_word(*sched, 400), 4);
  const auto report = analyze_fairness(prefix, 2, 4, sched->tag());

  CHECK(report.length == 400);
  CHECK(report.min_uniform_k == 4);
  CHECK(report.per_symbol_max_gap == std::vector<size_t>{4, 4, 4, 4});
  CHECK(report.multiwindow_starts.size() == 400 - 8 + 1);
  REQUIRE(report.density_gap.has_value());
  CHECK(*report.density_gap == 1);
  CHECK(report.analytic_tag.kind == FairnessTag::Kind::k_fair);
}

TEST_CASE("word prefix construction validates symbols and labels") {
  CHECK_THROWS_AS(WordPrefix::from_indices({0, 4}, 3), std::invalid_argument);
  CHECK_THROWS_AS(WordPrefix::from_indices({}, 0), std::invalid_argument);
  const auto g = chain3_graph(0.5);
  const auto w = WordPrefix::from_labels(g, {"a", "d", "b"});
  CHECK(w.symbols == std::vector<int>{0, 3, 1});
  CHECK_THROWS_AS(WordPrefix::from_labels(g, {"a", "q"}), std::invalid_argument);
}
