#include "otslab/fairness.hpp"

#include <algorithm>
#include <stdexcept>

namespace otslab {

WordPrefix WordPrefix::from_indices(std::vector<int> symbols, int alphabet_size) {
  if (alphabet_size <= 0) {
    throw std::invalid_argument("word prefix: alphabet must be nonempty");
  }
  for (int s : symbols) {
    if (s < 0 || s >= alphabet_size) {
      throw std::invalid_argument("word prefix: symbol outside alphabet");
    }
  }
  return WordPrefix{std::move(symbols), alphabet_size};
}

WordPrefix WordPrefix::from_labels(const InfluenceGraph& graph,
                                   const std::vector<std::string>& labels) {
  std::vector<int> symbols;
  symbols.reserve(labels.size());
  for (const auto& label : labels) {
    const auto e = graph.edge_by_label(label);
    if (!e) throw std::invalid_argument("word prefix: unknown action '" + label + "'");
    symbols.push_back(*e);
  }
  return WordPrefix{std::move(symbols), graph.edge_count()};
}

bool FairnessTag::implies(const FairnessTag& weaker) const {
  if (weaker.kind == Kind::unknown) return true;
  if (kind == Kind::unknown) return false;
  if (almost_sure && !weaker.almost_sure) return false;

  // Normalize to the strongest statement each kind certifies.
  const bool self_window = kind == Kind::k_fair || kind == Kind::bounded_fair;
  switch (weaker.kind) {
    case Kind::strongly_fair:
      return true;  // everything below omega-fairness implies it
    case Kind::k_fair:
    case Kind::bounded_fair:
      return self_window && k <= weaker.k;
    case Kind::mk_fair:
      if (self_window) return k <= weaker.k;
      if (kind == Kind::mk_fair) return m >= weaker.m && k <= weaker.k;
      return false;
    case Kind::m_bounded_fair:
      if (self_window) return true;
      if (kind == Kind::mk_fair || kind == Kind::m_bounded_fair) {
        return m >= weaker.m;
      }
      return false;
    case Kind::unknown:
      return true;
  }
  return false;
}

std::string FairnessTag::describe() const {
  std::string out;
  switch (kind) {
    case Kind::unknown: out = "unknown"; break;
    case Kind::strongly_fair: out = "strongly_fair"; break;
    case Kind::k_fair: out = "k_fair(" + std::to_string(k) + ")"; break;
    case Kind::bounded_fair: out = "bounded_fair(" + std::to_string(k) + ")"; break;
    case Kind::mk_fair:
      out = "mk_fair(m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")";
      break;
    case Kind::m_bounded_fair:
      out = "m_bounded_fair(m=" + std::to_string(m) + ")";
      break;
  }
  if (almost_sure) out += " almost_surely";
  if (not_strongly_fair) out += " (not strongly fair)";
  return out;
}

bool window_complete(const WordPrefix& prefix, size_t start, size_t k) {
  if (start + k > prefix.size()) {
    throw std::out_of_range("window_complete: window exceeds prefix");
  }
  if (k < static_cast<size_t>(prefix.alphabet_size)) return false;
  std::vector<char> seen(static_cast<size_t>(prefix.alphabet_size), 0);
  int distinct = 0;
  for (size_t i = start; i < start + k; ++i) {
    char& flag = seen[static_cast<size_t>(prefix.symbols[i])];
    if (!flag) {
      flag = 1;
      if (++distinct == prefix.alphabet_size) return true;
    }
  }
  return false;
}

namespace {

// Longest stretch without each symbol; size()+... semantics shared by
// minimal_uniform_k and max_symbol_gaps.
std::vector<size_t> max_absence_stretch(const WordPrefix& prefix) {
  const size_t n = prefix.size();
  const size_t syms = static_cast<size_t>(prefix.alphabet_size);
  std::vector<size_t> last(syms, static_cast<size_t>(-1));
  std::vector<size_t> stretch(syms, 0);
  for (size_t i = 0; i < n; ++i) {
    const auto s = static_cast<size_t>(prefix.symbols[i]);
    const size_t gap = i - last[s] - 1;  // wraps to i when never seen
    stretch[s] = std::max(stretch[s], last[s] == static_cast<size_t>(-1) ? i : gap);
    last[s] = i;
  }
  for (size_t s = 0; s < syms; ++s) {
    if (last[s] == static_cast<size_t>(-1)) {
      stretch[s] = n + 1;  // never occurs
    } else {
      stretch[s] = std::max(stretch[s], n - last[s] - 1);
    }
  }
  return stretch;
}

}  // namespace

std::optional<size_t> minimal_uniform_k(const WordPrefix& prefix) {
  if (prefix.size() == 0) return std::nullopt;
  size_t k = 0;
  for (size_t stretch : max_absence_stretch(prefix)) {
    if (stretch > prefix.size()) return std::nullopt;  // absent symbol
    k = std::max(k, stretch + 1);
  }
  return k;
}

std::vector<size_t> max_symbol_gaps(const WordPrefix& prefix) {
  const size_t n = prefix.size();
  const size_t syms = static_cast<size_t>(prefix.alphabet_size);
  std::vector<std::vector<size_t>> positions(syms);
  for (size_t i = 0; i < n; ++i) {
    positions[static_cast<size_t>(prefix.symbols[i])].push_back(i);
  }
  std::vector<size_t> gaps(syms, 0);
  for (size_t s = 0; s < syms; ++s) {
    const auto& pos = positions[s];
    if (pos.empty()) {
      gaps[s] = n + 1;
      continue;
    }
    size_t g = pos.front() + 1;  // from position 0
    for (size_t t = 1; t < pos.size(); ++t) g = std::max(g, pos[t] - pos[t - 1]);
    g = std::max(g, n - pos.back());  // to prefix end
    gaps[s] = g;
  }
  return gaps;
}

std::vector<size_t> find_multiwindows(const WordPrefix& prefix, int m, size_t k) {
  if (m < 1 || k < 1) throw std::invalid_argument("find_multiwindows: m,k >= 1");
  std::vector<size_t> hits;
  const size_t n = prefix.size();
  const size_t span = static_cast<size_t>(m) * k;
  if (span > n) return hits;

  // complete[s] == 1 iff the k-window at s covers the alphabet.
  const size_t window_count = n - k + 1;
  std::vector<char> complete(window_count, 0);
  if (k >= static_cast<size_t>(prefix.alphabet_size)) {
    std::vector<size_t> counts(static_cast<size_t>(prefix.alphabet_size), 0);
    size_t distinct = 0;
    for (size_t i = 0; i < k; ++i) {
      if (counts[static_cast<size_t>(prefix.symbols[i])]++ == 0) ++distinct;
    }
    complete[0] = distinct == static_cast<size_t>(prefix.alphabet_size);
    for (size_t s = 1; s < window_count; ++s) {
      if (--counts[static_cast<size_t>(prefix.symbols[s - 1])] == 0) --distinct;
      if (counts[static_cast<size_t>(prefix.symbols[s + k - 1])]++ == 0) ++distinct;
      complete[s] = distinct == static_cast<size_t>(prefix.alphabet_size);
    }
  }

  for (size_t s = 0; s + span <= n; ++s) {
    bool all = true;
    for (int j = 0; j < m; ++j) {
      if (!complete[s + static_cast<size_t>(j) * k]) {
        all = false;
        break;
      }
    }
    if (all) hits.push_back(s);
  }
  return hits;
}

bool density_check(const WordPrefix& prefix, int m, size_t k, size_t window_g) {
  const size_t span = static_cast<size_t>(m) * k;
  if (window_g < span) {
    throw std::invalid_argument("density_check: horizon smaller than m*k");
  }
  const size_t n = prefix.size();
  if (window_g > n) {
    throw std::invalid_argument("density_check: horizon exceeds prefix");
  }
  const auto hits = find_multiwindows(prefix, m, k);
  size_t next_hit = 0;
  for (size_t w = 0; w + window_g <= n; ++w) {
    while (next_hit < hits.size() && hits[next_hit] < w) ++next_hit;
    if (next_hit >= hits.size() || hits[next_hit] >= w + window_g) return false;
  }
  return true;
}

FairnessReport analyze_fairness(const WordPrefix& prefix, int m, size_t k,
                                FairnessTag tag) {
  FairnessReport report;
  report.length = prefix.size();
  report.alphabet_size = prefix.alphabet_size;
  report.per_symbol_max_gap = max_symbol_gaps(prefix);
  report.min_uniform_k = minimal_uniform_k(prefix);
  report.multi_m = m;
  report.multi_k = k;
  if (m >= 1 && k >= 1) {
    report.multiwindow_starts = find_multiwindows(prefix, m, k);
    if (report.multiwindow_starts.size() >= 2) {
      size_t g = 0;
      for (size_t i = 1; i < report.multiwindow_starts.size(); ++i) {
        g = std::max(g, report.multiwindow_starts[i] - report.multiwindow_starts[i - 1]);
      }
      report.density_gap = g;
    }
  }
  report.analytic_tag = tag;
  return report;
}

WordPrefix rotation_gap_witness(int alphabet_size, size_t k, size_t horizon) {
  if (alphabet_size < 2) throw std::invalid_argument("witness needs >= 2 symbols");
  if (k < static_cast<size_t>(alphabet_size - 1)) {
    throw std::invalid_argument("witness needs k >= alphabet_size - 1");
  }
  // v cycles through every symbol but the last, padded to length k.
  std::vector<int> period;
  for (size_t i = 0; i < k; ++i) {
    period.push_back(static_cast<int>(i % static_cast<size_t>(alphabet_size - 1)));
  }
  period.push_back(alphabet_size - 1);
  std::vector<int> symbols;
  symbols.reserve(horizon);
  for (size_t i = 0; i < horizon; ++i) symbols.push_back(period[i % period.size()]);
  return WordPrefix::from_indices(std::move(symbols), alphabet_size);
}

WordPrefix power_of_two_witness(size_t horizon) {
  std::vector<int> symbols(horizon, 1);
  for (size_t p = 1; p <= horizon; p *= 2) symbols[p - 1] = 0;
  return WordPrefix::from_indices(std::move(symbols), 2);
}

WordPrefix separated_multiwindow_witness(int m, size_t k, size_t horizon) {
  if (m < 1 || k < 2) throw std::invalid_argument("witness needs m >= 1, k >= 2");
  std::vector<int> period;
  for (int j = 0; j < m; ++j) {
    period.push_back(1);  // marker
    period.insert(period.end(), k - 1, 0);
  }
  period.insert(period.end(), k, 0);  // separating filler block
  std::vector<int> symbols;
  symbols.reserve(horizon);
  for (size_t i = 0; i < horizon; ++i) symbols.push_back(period[i % period.size()]);
  return WordPrefix::from_indices(std::move(symbols), 2);
}

std::vector<HierarchyWitness> hierarchy_witnesses() {
  std::vector<HierarchyWitness> witnesses;

  witnesses.push_back(HierarchyWitness{
      "rotation_gap",
      "every 5-window is complete but some 4-window is not",
      [](size_t horizon) { return rotation_gap_witness(2, 4, horizon); },
      [](const WordPrefix& prefix) {
        const auto k = minimal_uniform_k(prefix);
        return k.has_value() && *k == 5;
      }});

  witnesses.push_back(HierarchyWitness{
      "power_of_two",
      "both symbols keep occurring, yet no fixed window size persists: the "
      "minimal uniform k grows like horizon/2",
      [](size_t horizon) { return power_of_two_witness(horizon); },
      [](const WordPrefix& prefix) {
        const auto gaps = max_symbol_gaps(prefix);
        for (size_t g : gaps) {
          if (g > prefix.size()) return false;  // a symbol stopped occurring
        }
        const auto k = minimal_uniform_k(prefix);
        // Exact at power-of-two horizons; in general the deepest gap sits
        // between the last two power-of-two positions.
        size_t top = 1;
        while (top * 2 <= prefix.size()) top *= 2;
        const size_t expected = std::max<size_t>(top / 2, 3);
        return k.has_value() && *k >= expected;
      }});

  witnesses.push_back(HierarchyWitness{
      "separated_multiwindows",
      "complete (2,4) multi-windows recur but no (3,4) multi-window exists",
      [](size_t horizon) { return separated_multiwindow_witness(2, 4, horizon); },
      [](const WordPrefix& prefix) {
        if (prefix.size() < 24) return false;
        const auto two = find_multiwindows(prefix, 2, 4);
        const auto three = find_multiwindows(prefix, 3, 4);
        if (!three.empty() || two.empty()) return false;
        // one hit per 12-symbol period, anchored at every period start
        for (size_t s = 0; s + 8 <= prefix.size(); s += 12) {
          if (!std::binary_search(two.begin(), two.end(), s)) return false;
        }
        return true;
      }});

  return witnesses;
}

}  // namespace otslab
