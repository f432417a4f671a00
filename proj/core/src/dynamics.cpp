#include "otslab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otslab {

double OpinionState::min() const {
  if (values.empty()) throw std::invalid_argument("opinion state is empty");
  return *std::min_element(values.begin(), values.end());
}

double OpinionState::max() const {
  if (values.empty()) throw std::invalid_argument("opinion state is empty");
  return *std::max_element(values.begin(), values.end());
}

bool OpinionState::valid() const {
  if (values.empty()) return false;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) return false;
  }
  return true;
}

double clamp01(double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("clamp01: non-finite input");
  return std::min(std::max(r, 0.0), 1.0);
}

double confirmation_bias(const InfluenceGraph& graph, int edge_index,
                         const OpinionState& state) {
  const Edge& edge = graph.edge(edge_index);
  return 1.0 - std::fabs(state[static_cast<size_t>(edge.to)] -
                         state[static_cast<size_t>(edge.from)]);
}

double bounded_scale(double raw, double lower, double upper) {
  if (!(lower > 0.0 && lower < upper && upper < 1.0)) {
    throw std::invalid_argument("bounded_scale: need 0 < lower < upper < 1");
  }
  if (!(raw >= 0.0 && raw <= 1.0)) {
    throw std::invalid_argument("bounded_scale: raw value outside [0,1]");
  }
  return lower + (upper - lower) * raw;
}

double polarizing_pair_influence(const std::string& edge_label,
                                 const OpinionState& state, double lower,
                                 double upper) {
  if (state.size() != 2) {
    throw std::invalid_argument("polarizing pair influence needs 2 agents");
  }
  const double b1 = state[0];
  const double b2 = state[1];
  if (edge_label == "a") {
    if (b1 == b2) return 0.5;
    return clamp01((upper - b2) / (2.0 * (b1 - b2)));
  }
  if (edge_label == "b") {
    if (b1 == b2) return 0.5;
    return clamp01((lower - b1) / (2.0 * (b2 - b1)));
  }
  throw std::invalid_argument("polarizing pair influence: unknown action '" +
                              edge_label + "'");
}

double polarizing_triple_influence(const std::string& edge_label,
                                   const OpinionState& state, double lower,
                                   double upper) {
  if (state.size() != 3) {
    throw std::invalid_argument("polarizing triple influence needs 3 agents");
  }
  const double b1 = state[0];
  const double b2 = state[1];
  const double b3 = state[2];
  if (edge_label == "b" || edge_label == "d") return 0.5;
  if (edge_label == "a") {
    if (b1 == b2) return 0.5;
    return clamp01((0.5 * (b1 + lower) - b2) / (b1 - b2));
  }
  if (edge_label == "c") {
    if (b2 == b3) return 0.5;
    return clamp01((0.5 * (b3 + upper) - b2) / (b3 - b2));
  }
  throw std::invalid_argument("polarizing triple influence: unknown action '" +
                              edge_label + "'");
}

InfluenceFunction InfluenceFunction::static_weights() {
  return InfluenceFunction(Kind::static_weights, 0.0, 0.0);
}

InfluenceFunction InfluenceFunction::confirmation_bias() {
  return InfluenceFunction(Kind::confirmation_bias, 0.0, 0.0);
}

InfluenceFunction InfluenceFunction::polarizing_pair(double lower, double upper) {
  if (!(lower > 0.0 && lower < upper && upper < 1.0)) {
    throw std::invalid_argument("polarizing_pair: need 0 < lower < upper < 1");
  }
  return InfluenceFunction(Kind::polarizing_pair, lower, upper);
}

InfluenceFunction InfluenceFunction::polarizing_triple(double lower, double upper) {
  if (!(lower > 0.0 && lower < upper && upper < 1.0)) {
    throw std::invalid_argument("polarizing_triple: need 0 < lower < upper < 1");
  }
  return InfluenceFunction(Kind::polarizing_triple, lower, upper);
}

InfluenceFunction InfluenceFunction::table(TableFn fn) {
  InfluenceFunction f(Kind::table, 0.0, 0.0);
  f.table_ = std::move(fn);
  return f;
}

InfluenceFunction InfluenceFunction::bounded_into(double lower, double upper) const {
  if (!(lower > 0.0 && lower < upper && upper < 1.0)) {
    throw std::invalid_argument("bounded_into: need 0 < lower < upper < 1");
  }
  InfluenceFunction f = *this;
  f.scaled_ = true;
  f.scale_lo_ = lower;
  f.scale_hi_ = upper;
  return f;
}

double InfluenceFunction::operator()(const InfluenceGraph& graph, int edge_index,
                                     const OpinionState& state) const {
  if (edge_index < 0 || edge_index >= graph.edge_count()) {
    throw std::invalid_argument("influence: edge index out of range");
  }
  double raw = 0.0;
  switch (kind_) {
    case Kind::static_weights:
      raw = graph.weight(edge_index);
      break;
    case Kind::confirmation_bias:
      raw = otslab::confirmation_bias(graph, edge_index, state);
      break;
    case Kind::polarizing_pair:
      raw = polarizing_pair_influence(graph.edge(edge_index).label, state, lower_,
                                      upper_);
      break;
    case Kind::polarizing_triple:
      raw = polarizing_triple_influence(graph.edge(edge_index).label, state, lower_,
                                        upper_);
      break;
    case Kind::table:
      raw = clamp01(table_(graph, edge_index, state));
      break;
  }
  return scaled_ ? bounded_scale(raw, scale_lo_, scale_hi_) : raw;
}

bool InfluenceFunction::dynamic() const {
  return kind_ != Kind::static_weights;
}

std::optional<std::pair<double, double>> InfluenceFunction::rate_bounds(
    const InfluenceGraph& graph) const {
  if (scaled_) return std::make_pair(scale_lo_, scale_hi_);
  if (kind_ == Kind::static_weights && graph.edge_count() > 0) {
    return influence_extrema(graph);
  }
  return std::nullopt;
}

std::string InfluenceFunction::describe() const {
  std::string base;
  switch (kind_) {
    case Kind::static_weights: base = "static"; break;
    case Kind::confirmation_bias: base = "confirmation_bias"; break;
    case Kind::polarizing_pair: base = "polarizing_pair"; break;
    case Kind::polarizing_triple: base = "polarizing_triple"; break;
    case Kind::table: base = "table"; break;
  }
  if (scaled_) {
    base += " scaled[" + std::to_string(scale_lo_) + "," +
            std::to_string(scale_hi_) + "]";
  }
  return base;
}

OpinionState step(const OpinionState& state, int edge_index,
                  const InfluenceFunction& influence, const InfluenceGraph& graph) {
  if (edge_index < 0 || edge_index >= graph.edge_count()) {
    throw std::invalid_argument("step: edge not in graph");
  }
  if (static_cast<int>(state.size()) != graph.agent_count() || !state.valid()) {
    throw std::invalid_argument("step: invalid opinion state");
  }
  const Edge& edge = graph.edge(edge_index);
  const double w = influence(graph, edge_index, state);
  const double from = state[static_cast<size_t>(edge.from)];
  const double to = state[static_cast<size_t>(edge.to)];

  double updated;
  if (w == 1.0) {
    updated = from;  // full adoption, exact
  } else {
    updated = to + (from - to) * w;
    // The update is a convex combination; clamping keeps the extremal
    // bounds exact under rounding.
    updated = std::min(std::max(updated, state.min()), state.max());
  }

  OpinionState next = state;
  next[static_cast<size_t>(edge.to)] = updated;
  return next;
}

}  // namespace otslab
