#include "ppdyn/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ppdyn {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path, const std::string& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != header) throw std::runtime_error(path + ": unexpected header");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

void expect_cells(const std::vector<std::string>& row, std::size_t n, const std::string& path) {
  if (row.size() != n) throw std::runtime_error(path + ": expected " + std::to_string(n) + " columns");
}

// Warnings are stored inside a ';'-separated, ','-delimited cell.
std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == ';' || c == '=') c = ' ';
  return s;
}

std::string join_eig(const Eigenpair& e) {
  return format_double(e[0].real()) + ',' + format_double(e[0].imag()) + ',' + format_double(e[1].real()) + ',' +
         format_double(e[1].imag());
}

const char* kTrajectoryHeader = "t,x1,x2";
const char* kBranchHeader = "param,branch_id,x1,x2,tr,det,eig1_re,eig1_im,eig2_re,eig2_im";
const char* kEventsHeader = "kind,param_name,critical_value,x1,x2,diagnostic";
const char* kEquilibriaHeader = "kind,x1,x2,tr,det,eig1_re,eig1_im,eig2_re,eig2_im,classification";
const char* kCurveHeader = "x1,x2";

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

void write_trajectory(const Trajectory& t, const std::string& path) {
  auto out = open_out(path);
  out << kTrajectoryHeader << '\n';
  for (std::size_t i = 0; i < t.size(); ++i)
    out << format_double(t.times[i]) << ',' << format_double(t.states[i](0)) << ','
        << format_double(t.states[i](1)) << '\n';
}

Trajectory read_trajectory(const std::string& path) {
  Trajectory t;
  for (const auto& row : read_rows(path, kTrajectoryHeader)) {
    expect_cells(row, 3, path);
    t.times.push_back(parse_double(row[0]));
    t.states.emplace_back(parse_double(row[1]), parse_double(row[2]));
  }
  return t;
}

std::vector<BranchRow> branch_rows(const Branch& b) {
  std::vector<BranchRow> rows;
  for (std::size_t i = 0; i < b.samples.size(); ++i)
    for (const auto& bp : b.points[i]) rows.push_back({b.samples[i], bp.branch_id, bp});
  return rows;
}

void write_branch(const Branch& b, const std::string& path) {
  auto out = open_out(path);
  out << kBranchHeader << '\n';
  for (const auto& r : branch_rows(b))
    out << format_double(r.param) << ',' << r.branch_id << ',' << format_double(r.point.point(0)) << ','
        << format_double(r.point.point(1)) << ',' << format_double(r.point.trace) << ','
        << format_double(r.point.det) << ',' << join_eig(r.point.eigenvalues) << '\n';
}

std::vector<BranchRow> read_branch(const std::string& path) {
  std::vector<BranchRow> rows;
  for (const auto& row : read_rows(path, kBranchHeader)) {
    expect_cells(row, 10, path);
    BranchRow r;
    r.param = parse_double(row[0]);
    r.branch_id = std::stoi(row[1]);
    r.point.branch_id = r.branch_id;
    r.point.point = State(parse_double(row[2]), parse_double(row[3]));
    r.point.trace = parse_double(row[4]);
    r.point.det = parse_double(row[5]);
    r.point.eigenvalues = {std::complex<double>(parse_double(row[6]), parse_double(row[7])),
                           std::complex<double>(parse_double(row[8]), parse_double(row[9]))};
    rows.push_back(r);
  }
  return rows;
}

void write_events(const std::vector<BifurcationEvent>& events, const std::string& path) {
  auto out = open_out(path);
  out << kEventsHeader << '\n';
  for (const auto& ev : events) {
    const auto& d = ev.diagnostics;
    std::string diag = "det=" + format_double(d.det) + ";tr=" + format_double(d.tr) +
                       ";transversality=" + format_double(d.transversality);
    if (d.transversality_half_step) diag += ";transversality_half_step=" + format_double(*d.transversality_half_step);
    if (d.lyapunov) {
      diag += ";lyapunov=" + format_double(*d.lyapunov);
      diag += ";lyapunov_sign=" + std::to_string(*d.lyapunov_sign());
    }
    for (const auto& w : d.warnings) diag += ";warning=" + sanitize(w);
    out << to_string(ev.kind) << ',' << to_string(ev.param) << ',' << format_double(ev.critical_value) << ','
        << format_double(ev.location(0)) << ',' << format_double(ev.location(1)) << ',' << diag << '\n';
  }
}

std::vector<BifurcationEvent> read_events(const std::string& path) {
  std::vector<BifurcationEvent> events;
  for (const auto& row : read_rows(path, kEventsHeader)) {
    expect_cells(row, 6, path);
    BifurcationEvent ev;
    ev.kind = parse_event_kind(row[0]);
    ev.param = parse_sweep_param(row[1]);
    ev.critical_value = parse_double(row[2]);
    ev.location = State(parse_double(row[3]), parse_double(row[4]));
    std::stringstream ss(row[5]);
    std::string item;
    while (std::getline(ss, item, ';')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::runtime_error(path + ": malformed diagnostic '" + item + "'");
      const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
      auto& d = ev.diagnostics;
      if (key == "det") d.det = parse_double(val);
      else if (key == "tr") d.tr = parse_double(val);
      else if (key == "transversality") d.transversality = parse_double(val);
      else if (key == "transversality_half_step") d.transversality_half_step = parse_double(val);
      else if (key == "lyapunov") d.lyapunov = parse_double(val);
      else if (key == "lyapunov_sign") continue;
      else if (key == "warning") d.warnings.push_back(val);
      else throw std::runtime_error(path + ": unknown diagnostic '" + key + "'");
    }
    events.push_back(std::move(ev));
  }
  return events;
}

void write_equilibria(const std::vector<Equilibrium>& eqs, const std::string& path) {
  auto out = open_out(path);
  out << kEquilibriaHeader << '\n';
  for (const auto& e : eqs)
    out << to_string(e.kind) << ',' << format_double(e.point(0)) << ',' << format_double(e.point(1)) << ','
        << format_double(e.trace) << ',' << format_double(e.det) << ',' << join_eig(e.eigenvalues) << ','
        << to_string(e.classification) << '\n';
}

void write_curve(const PlanarCurve& c, const std::string& path) {
  auto out = open_out(path);
  out << kCurveHeader << '\n';
  for (const auto& s : c.points) out << format_double(s(0)) << ',' << format_double(s(1)) << '\n';
}

std::vector<State> read_curve(const std::string& path) {
  std::vector<State> pts;
  for (const auto& row : read_rows(path, kCurveHeader)) {
    expect_cells(row, 2, path);
    pts.emplace_back(parse_double(row[0]), parse_double(row[1]));
  }
  return pts;
}

}  // namespace ppdyn
