#include "otslab/trace_csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace otslab {

namespace {

std::string format_opinion(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_opinion(const std::string& field, size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    throw std::runtime_error("trace csv: bad opinion value on line " +
                             std::to_string(line_no));
  }
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& out, const RunTrace& trace,
                     const InfluenceGraph& graph) {
  out << "t,action";
  for (int i = 1; i <= static_cast<int>(trace.initial.size()); ++i) {
    out << ",B" << i;
  }
  out << "\n";
  out << "0,";
  for (double v : trace.initial.values) out << "," << format_opinion(v);
  out << "\n";
  for (size_t t = 0; t < trace.steps(); ++t) {
    out << (t + 1) << "," << graph.edge(trace.actions[t]).label;
    for (double v : trace.states[t].values) out << "," << format_opinion(v);
    out << "\n";
  }
}

void write_trace_csv_file(const std::string& path, const RunTrace& trace,
                          const InfluenceGraph& graph) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  write_trace_csv(out, trace, graph);
  if (!out) throw std::runtime_error("failed while writing trace file: " + path);
}

ParsedTrace parse_trace_csv(std::istream& in) {
  ParsedTrace parsed;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trace csv: empty input");
  const auto header = split_line(line);
  if (header.size() < 3 || header[0] != "t" || header[1] != "action") {
    throw std::runtime_error("trace csv: unexpected header");
  }
  parsed.agent_count = static_cast<int>(header.size()) - 2;

  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("trace csv: wrong field count on line " +
                               std::to_string(line_no));
    }
    std::vector<double> values;
    values.reserve(static_cast<size_t>(parsed.agent_count));
    for (size_t i = 2; i < fields.size(); ++i) {
      values.push_back(parse_opinion(fields[i], line_no));
    }
    if (line_no == 2) {
      if (!fields[1].empty()) {
        throw std::runtime_error("trace csv: first row must carry no action");
      }
      parsed.initial = OpinionState(std::move(values));
    } else {
      parsed.actions.push_back(fields[1]);
      parsed.states.emplace_back(std::move(values));
    }
  }
  if (parsed.initial.size() == 0) {
    throw std::runtime_error("trace csv: missing initial row");
  }
  return parsed;
}

ParsedTrace parse_trace_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return parse_trace_csv(in);
}

}  // namespace otslab
