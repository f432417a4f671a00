#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "otslab/analysis.hpp"
#include "otslab/graph.hpp"

namespace otslab {

/// Trace CSV: header "t,action,B1,...,Bn"; row 0 carries the initial state
/// and an empty action; opinions are serialized with 17 significant digits
/// so parsing reproduces them bit-exactly.
void write_trace_csv(std::ostream& out, const RunTrace& trace,
                     const InfluenceGraph& graph);
void write_trace_csv_file(const std::string& path, const RunTrace& trace,
                          const InfluenceGraph& graph);

/// Trace as read back from a CSV; actions are labels (the graph is not
/// needed to parse).
struct ParsedTrace {
  int agent_count = 0;
  OpinionState initial;
  std::vector<std::string> actions;
  std::vector<OpinionState> states;
};

ParsedTrace parse_trace_csv(std::istream& in);
ParsedTrace parse_trace_csv_file(const std::string& path);

}  // namespace otslab
