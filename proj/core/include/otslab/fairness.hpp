#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "otslab/graph.hpp"

namespace otslab {

/// Finite prefix of an action word. Symbols are indices into a fixed
/// alphabet (for runs, the graph's edge indices).
struct WordPrefix {
  std::vector<int> symbols;
  int alphabet_size = 0;

  static WordPrefix from_indices(std::vector<int> symbols, int alphabet_size);
  static WordPrefix from_labels(const InfluenceGraph& graph,
                                const std::vector<std::string>& labels);

  size_t size() const { return symbols.size(); }
};

/// Analytic fairness classification attached by a generator that knows its
/// own structure. Prefix diagnostics are the checkable artifact; the tag is
/// advisory.
struct FairnessTag {
  enum class Kind {
    unknown,
    strongly_fair,
    k_fair,
    bounded_fair,
    mk_fair,
    m_bounded_fair
  };

  Kind kind = Kind::unknown;
  size_t k = 0;
  int m = 0;
  bool almost_sure = false;       // statistical claim (random generators)
  bool not_strongly_fair = false; // negative certificate (some edge never occurs)

  static FairnessTag unknown() { return {}; }
  static FairnessTag unfair() {
    FairnessTag tag;
    tag.not_strongly_fair = true;
    return tag;
  }
  static FairnessTag strongly_fair() { return {Kind::strongly_fair, 0, 0, false}; }
  static FairnessTag k_fair(size_t k) { return {Kind::k_fair, k, 0, false}; }
  static FairnessTag bounded_fair(size_t k) { return {Kind::bounded_fair, k, 0, false}; }
  static FairnessTag mk_fair(int m, size_t k) { return {Kind::mk_fair, k, m, false}; }
  static FairnessTag m_bounded_fair(int m, bool almost_sure = false) {
    return {Kind::m_bounded_fair, 0, m, almost_sure};
  }

  /// Hierarchy of fairness notions: k-fair words are (m,k)-fair for every
  /// m, (m,k)-fair words are (m',k')-fair for m' <= m, k' >= k, and every
  /// notion here implies strong fairness. An almost-sure claim only implies
  /// almost-sure claims.
  bool implies(const FairnessTag& weaker) const;

  std::string describe() const;
};

/// True iff the k consecutive symbols starting at `start` cover the whole
/// alphabet. Throws when the window does not fit in the prefix.
bool window_complete(const WordPrefix& prefix, size_t start, size_t k);

/// Smallest k such that every k-window inside the prefix is complete;
/// nullopt when no k works (some symbol never occurs). A necessary-
/// condition estimate: k-fairness of the infinite word implies the prefix
/// passes at k, but a finite prefix can never certify the converse.
std::optional<size_t> minimal_uniform_k(const WordPrefix& prefix);

/// Per symbol, the largest distance between consecutive occurrences,
/// counting from position 0 and to the prefix end. Symbols that never
/// occur map to size()+1.
std::vector<size_t> max_symbol_gaps(const WordPrefix& prefix);

/// All start indices s such that the m*k symbols from s split into m
/// consecutive complete k-windows (split anchored at s). Overlapping
/// occurrences are all reported.
std::vector<size_t> find_multiwindows(const WordPrefix& prefix, int m, size_t k);

/// True iff every length-G window of the prefix contains the start of a
/// complete (m,k) multi-window that finishes inside the prefix. Finite-
/// horizon necessary condition for (m,k)-fairness. Requires G >= m*k.
bool density_check(const WordPrefix& prefix, int m, size_t k, size_t window_g);

/// Window/gap/multi-window diagnostics of a prefix plus the generator tag.
struct FairnessReport {
  size_t length = 0;
  int alphabet_size = 0;
  std::vector<size_t> per_symbol_max_gap;
  std::optional<size_t> min_uniform_k;
  int multi_m = 0;
  size_t multi_k = 0;
  std::vector<size_t> multiwindow_starts;
  std::optional<size_t> density_gap;  // max distance between consecutive starts
  FairnessTag analytic_tag;
};

FairnessReport analyze_fairness(const WordPrefix& prefix, int m, size_t k,
                                FairnessTag tag = FairnessTag::unknown());

/// Witness words for the strictness of the fairness hierarchy, each with
/// the analyzer assertions it must satisfy on prefixes.
struct HierarchyWitness {
  std::string name;
  std::string claim;
  std::function<WordPrefix(size_t horizon)> generate;
  std::function<bool(const WordPrefix& prefix)> holds;
};

/// Periodic word (v e_n)^omega where v covers every symbol but e_n: every
/// (k+1)-window is complete, the k-window v is not.
WordPrefix rotation_gap_witness(int alphabet_size, size_t k, size_t horizon);

/// Two-symbol word with symbol 0 exactly at the power-of-two positions
/// (1-based): strongly fair, but the distance between occurrences of
/// symbol 0 doubles forever, so no fixed k ever persists.
WordPrefix power_of_two_witness(size_t horizon);

/// Two-symbol periodic word: m complete windows (marker + filler^(k-1))
/// followed by a filler^k block. (m,k)-fair, yet any (m+1)k stretch holds
/// at most m markers, so no complete (m+1,k) multi-window exists.
WordPrefix separated_multiwindow_witness(int m, size_t k, size_t horizon);

/// The executable witness family with default parameters (binary alphabet,
/// k = 4, m = 2).
std::vector<HierarchyWitness> hierarchy_witnesses();

}  // namespace otslab
