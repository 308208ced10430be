#include "alcp/record.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace alcp {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::GradTol: return "GradTol";
    case Termination::MaxIter: return "MaxIter";
    case Termination::ExactStationary: return "ExactStationary";
    case Termination::LineSearchStalled: return "LineSearchStalled";
  }
  return "Unknown";
}

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw Error("trace csv: bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size())
    throw Error("trace csv: bad integer '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << kTraceHeader << '\n';
  for (const TraceRow& r : rows) {
    os << r.n << ',' << r.l << ',' << fmt17(r.f_value) << ','
       << fmt17(r.grad_norm) << ',' << fmt17(r.stepsize) << ','
       << fmt17(r.initial_stepsize) << ',' << r.trials << ','
       << fmt17(r.g_dot_d) << ',' << fmt17(r.feasibility) << ','
       << fmt17(r.v_norm) << ',' << (r.center_changed ? 1 : 0) << ','
       << (r.restart ? 1 : 0) << ',' << fmt17(r.elapsed) << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTraceHeader)
    throw Error("trace csv: unexpected header");
  std::vector<TraceRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 13) throw Error("trace csv: expected 13 columns");
    TraceRow r;
    r.n = parse_int(cells[0]);
    r.l = parse_int(cells[1]);
    r.f_value = parse_double(cells[2]);
    r.grad_norm = parse_double(cells[3]);
    r.stepsize = parse_double(cells[4]);
    r.initial_stepsize = parse_double(cells[5]);
    r.trials = parse_int(cells[6]);
    r.g_dot_d = parse_double(cells[7]);
    r.feasibility = parse_double(cells[8]);
    r.v_norm = parse_double(cells[9]);
    r.center_changed = parse_int(cells[10]) != 0;
    r.restart = parse_int(cells[11]) != 0;
    r.elapsed = parse_double(cells[12]);
    rows.push_back(r);
  }
  return rows;
}

int count_armijo_violations(const std::vector<TraceRow>& rows, double c) {
  int bad = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const TraceRow& r = rows[i];
    if (!(rows[i + 1].f_value <= r.f_value + c * r.stepsize * r.g_dot_d)) ++bad;
  }
  return bad;
}

int count_ascent_steps(const std::vector<TraceRow>& rows) {
  int bad = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    if (!(rows[i + 1].f_value <= rows[i].f_value)) ++bad;
  return bad;
}

}  // namespace alcp
