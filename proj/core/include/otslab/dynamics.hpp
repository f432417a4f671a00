#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "otslab/graph.hpp"

namespace otslab {

/// One opinion value per agent, each in [0,1].
struct OpinionState {
  std::vector<double> values;

  OpinionState() = default;
  explicit OpinionState(std::vector<double> v) : values(std::move(v)) {}

  size_t size() const { return values.size(); }
  double operator[](size_t i) const { return values[i]; }
  double& operator[](size_t i) { return values[i]; }

  double min() const;
  double max() const;
  bool valid() const;  // all components finite and in [0,1]

  bool operator==(const OpinionState&) const = default;
};

/// min(max(r,0),1). Rejects non-finite input.
double clamp01(double r);

/// Confirmation bias: 1 - |B_to - B_from|.
double confirmation_bias(const InfluenceGraph& graph, int edge_index,
                         const OpinionState& state);

/// Linear rescale of raw in [0,1] into [lower,upper] with
/// 0 < lower < upper < 1.
double bounded_scale(double raw, double lower, double upper);

/// Two-agent polarizing influence law. For action "a" it evaluates
/// clamp01((upper - B2) / (2 (B1 - B2))), for action "b"
/// clamp01((lower - B1) / (2 (B2 - B1))); both are 0.5 when B1 == B2.
/// Wired so that "a" updates the agent holding component 2, one step
/// moves that agent halfway toward `upper` and the other agent halfway
/// toward `lower`: the pair drifts apart and the influences decay to 0.
/// Rejects labels other than "a" and "b".
double polarizing_pair_influence(const std::string& edge_label,
                                 const OpinionState& state, double lower,
                                 double upper);

/// Three-agent polarizing influence law. Actions "b" and "d" are fixed at
/// 0.5. Action "a" evaluates clamp01((0.5 (B1 + lower) - B2) / (B1 - B2)),
/// action "c" clamp01((0.5 (B3 + upper) - B2) / (B3 - B2)); degenerate
/// denominators fall back to 0.5. Wired so that "a"/"c" update the agent
/// holding component 2, one step resets that agent to the midpoint of B1
/// and `lower` (resp. B3 and `upper`), so it see-saws while the outer
/// agents stay pinched below `lower` / above `upper`. Rejects other labels.
double polarizing_triple_influence(const std::string& edge_label,
                                   const OpinionState& state, double lower,
                                   double upper);

/// Influence carried by an edge, possibly a function of the current
/// opinion state. Immutable value type; evaluation is pure.
class InfluenceFunction {
 public:
  using TableFn =
      std::function<double(const InfluenceGraph&, int, const OpinionState&)>;

  /// Returns the static graph weight, ignoring the state.
  static InfluenceFunction static_weights();
  static InfluenceFunction confirmation_bias();
  /// Polarizing pair/triple built-ins (parameters lower < upper in (0,1)).
  static InfluenceFunction polarizing_pair(double lower, double upper);
  static InfluenceFunction polarizing_triple(double lower, double upper);
  /// Custom state-dependent influence (no analytic bounds available).
  static InfluenceFunction table(TableFn fn);

  /// Wraps this influence so its output is rescaled into [lower,upper],
  /// 0 < lower < upper < 1.
  InfluenceFunction bounded_into(double lower, double upper) const;

  double operator()(const InfluenceGraph& graph, int edge_index,
                    const OpinionState& state) const;

  /// False only for the plain static case.
  bool dynamic() const;
  bool scaled() const { return scaled_; }

  /// Guaranteed [low, high] range of emitted influence values, when one is
  /// known: the graph extrema for static weights, the scaling interval for
  /// bounded variants. nullopt otherwise.
  std::optional<std::pair<double, double>> rate_bounds(
      const InfluenceGraph& graph) const;

  std::string describe() const;

 private:
  enum class Kind {
    static_weights,
    confirmation_bias,
    polarizing_pair,
    polarizing_triple,
    table
  };

  InfluenceFunction(Kind kind, double lower, double upper)
      : kind_(kind), lower_(lower), upper_(upper) {}

  Kind kind_ = Kind::static_weights;
  double lower_ = 0.0;   // polarizing-law parameters
  double upper_ = 0.0;
  bool scaled_ = false;  // bounded_into wrapper applied
  double scale_lo_ = 0.0;
  double scale_hi_ = 0.0;
  TableFn table_;
};

/// Single asynchronous update: returns the input state with component
/// `edge.to` replaced by B_to + (B_from - B_to) * w, where w is the
/// influence evaluated on the pre-update state. The new component is
/// clamped into [min(B), max(B)] so the extremal bounds hold exactly in
/// double arithmetic; w == 1 adopts B_from outright. Every other
/// component is bit-identical to the input. Rejects edges outside the
/// graph and invalid states.
OpinionState step(const OpinionState& state, int edge_index,
                  const InfluenceFunction& influence, const InfluenceGraph& graph);

}  // namespace otslab
