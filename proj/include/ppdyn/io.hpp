// Comma-separated output with 17 significant digits, and matching readers.
#pragma once

#include "ppdyn/bifurcation.hpp"
#include "ppdyn/equilibria.hpp"
#include "ppdyn/geometry.hpp"
#include "ppdyn/integrator.hpp"

#include <string>
#include <vector>

namespace ppdyn {

/// printf "%.17g": enough digits to read back the same double.
std::string format_double(double v);

/// Inverse of format_double; throws std::invalid_argument on junk.
double parse_double(const std::string& s);

/// Columns t,x1,x2.
void write_trajectory(const Trajectory& t, const std::string& path);
/// Times and states only; the verdict lives in the report.
Trajectory read_trajectory(const std::string& path);

struct BranchRow {
  double param = 0.0;
  int branch_id = 0;
  BranchPoint point;
};

/// Columns param,branch_id,x1,x2,tr,det,eig1_re,eig1_im,eig2_re,eig2_im.
void write_branch(const Branch& b, const std::string& path);
std::vector<BranchRow> read_branch(const std::string& path);
/// Rows of b in file order.
std::vector<BranchRow> branch_rows(const Branch& b);

/// Columns kind,param_name,critical_value,x1,x2,diagnostic, where diagnostic
/// is a ';'-separated list of key=value pairs.
void write_events(const std::vector<BifurcationEvent>& events, const std::string& path);
std::vector<BifurcationEvent> read_events(const std::string& path);

/// Columns kind,x1,x2,tr,det,eig1_re,eig1_im,eig2_re,eig2_im,classification.
void write_equilibria(const std::vector<Equilibrium>& eqs, const std::string& path);

/// Columns x1,x2.
void write_curve(const PlanarCurve& c, const std::string& path);
std::vector<State> read_curve(const std::string& path);

}  // namespace ppdyn
