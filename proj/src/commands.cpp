#include "ppdyn/commands.hpp"

#include "ppdyn/bifurcation.hpp"
#include "ppdyn/equilibria.hpp"
#include "ppdyn/extinction.hpp"
#include "ppdyn/geometry.hpp"
#include "ppdyn/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

namespace ppdyn {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json params_json(const Params& p) {
  return {{"a1", p.a1}, {"a2", p.a2}, {"b1", p.b1}, {"w0", p.w0}, {"w1", p.w1},
          {"d", p.d},   {"m1", p.m1}, {"m2", p.m2}, {"r", p.r}};
}

json state_json(const State& s) { return json::array({s(0), s(1)}); }

json verdict_json(const Verdict& v) {
  return {{"termination", to_string(v.kind)}, {"time", v.time}, {"reason", v.reason}};
}

json equilibrium_json(const Equilibrium& e) {
  json ev = json::array();
  for (const auto& l : e.eigenvalues) ev.push_back({l.real(), l.imag()});
  return {{"kind", to_string(e.kind)}, {"point", state_json(e.point)}, {"trace", e.trace},
          {"det", e.det},              {"eigenvalues", ev},            {"classification", to_string(e.classification)}};
}

json event_json(const BifurcationEvent& ev) {
  json j = {{"kind", to_string(ev.kind)},
            {"param", to_string(ev.param)},
            {"critical_value", ev.critical_value},
            {"location", state_json(ev.location)},
            {"det", ev.diagnostics.det},
            {"tr", ev.diagnostics.tr},
            {"transversality", ev.diagnostics.transversality},
            {"warnings", ev.diagnostics.warnings}};
  if (ev.diagnostics.lyapunov) {
    j["lyapunov"] = *ev.diagnostics.lyapunov;
    j["lyapunov_sign"] = *ev.diagnostics.lyapunov_sign();
  }
  return j;
}

// Missing command block in an otherwise valid config.
struct MissingBlock : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_report(const json& report, const fs::path& dir) {
  std::ofstream out(dir / "report.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report.json");
  out << report.dump(2) << '\n';
}

json cmd_simulate(const ScenarioConfig& cfg, const fs::path& dir, std::ostream& log) {
  if (!cfg.simulate_ic) throw MissingBlock("simulate needs [simulate] x1, x2");
  const Trajectory t = integrate(cfg.params, *cfg.simulate_ic, cfg.integrator);
  write_trajectory(t, (dir / "trajectory.csv").string());
  log << to_string(t.termination.kind) << " at t=" << format_double(t.final_time()) << " state ("
      << format_double(t.final_state()(0)) << ", " << format_double(t.final_state()(1)) << ")\n";
  return {{"verdict", verdict_json(t.termination)}, {"final_state", state_json(t.final_state())},
          {"steps", t.size()}};
}

json cmd_equilibria(const ScenarioConfig& cfg, const fs::path& dir, std::ostream& log) {
  ScanOptions so;
  so.scan_points = cfg.scan_points;
  const auto eqs = all_equilibria(cfg.params, so);
  write_equilibria(eqs, (dir / "equilibria.csv").string());
  json list = json::array();
  for (const auto& e : eqs) {
    list.push_back(equilibrium_json(e));
    log << to_string(e.kind) << " (" << format_double(e.point(0)) << ", " << format_double(e.point(1)) << ") "
        << to_string(e.classification) << '\n';
  }
  return {{"equilibria", list}};
}

json cmd_sweep(const ScenarioConfig& cfg, const fs::path& dir, std::ostream& log) {
  if (!cfg.sweep) throw MissingBlock("sweep needs a [sweep] block");
  const SweepSpec& sw = *cfg.sweep;
  SweepOptions so;
  so.scan_points = sw.scan_points;
  const Branch b = branch_sweep(cfg.params, sw.param, sw.lo, sw.hi, sw.n, so);
  const auto events = detect_all(b);
  write_branch(b, (dir / "branch.csv").string());
  write_events(events, (dir / "events.csv").string());

  json report = {{"param", to_string(sw.param)}, {"branches", b.branch_count}, {"events", json::array()}};
  for (const auto& ev : events) {
    json j = event_json(ev);
    if (ev.kind == EventKind::Hopf && ev.param == SweepParam::a1) {
      const HopfA1Resolution res = resolve_hopf_a1(cfg.params, ev.critical_value);
      j["closed_form_a1"] = {{"value", res.a1},
                             {"iterations", res.iterations},
                             {"converged", res.converged},
                             {"relative_gap", std::abs(res.a1 - ev.critical_value) / std::abs(ev.critical_value)}};
    }
    report["events"].push_back(j);
    log << to_string(ev.kind) << ' ' << to_string(ev.param) << '=' << format_double(ev.critical_value) << '\n';
  }
  if (cfg.params.m2 == 1.0 && cfg.params.w1 > cfg.params.a2 && sw.param == SweepParam::r) {
    const TranscriticalCandidates tc = transcritical_r(cfg.params);
    report["transcritical_r"] = {{"as_printed", tc.as_printed},
                                 {"as_derived", tc.as_derived},
                                 {"printed_matches", tc.printed_matches},
                                 {"derived_matches", tc.derived_matches}};
    if (!tc.warning.empty()) report["flags"].push_back(tc.warning);
  }
  return report;
}

json cmd_separatrix(const ScenarioConfig& cfg, const fs::path& dir, std::ostream& log) {
  const Params& p = cfg.params;
  SeparatrixOptions so;
  so.probes = cfg.separatrix.probes;
  so.probe_count = cfg.separatrix.probe_count;
  so.integrator.horizon = cfg.separatrix.horizon;
  const PlanarCurve ws = trace_stable_separatrix_E0(p, so);
  const PlanarCurve wu = trace_unstable_manifold_E1(p);
  const SeparatrixPosition pos = separatrix_relative_position(ws, wu);
  write_curve(ws, (dir / "stable_separatrix_E0.csv").string());
  write_curve(wu, (dir / "unstable_manifold_E1.csv").string());
  const double K = p.carrying_capacity();
  write_curve(prey_nullcline(p, 1e-3 * K, K, 400), (dir / "prey_nullcline.csv").string());
  if (p.w1 > p.a2) write_curve(predator_nullcline(p, default_K2(p), 100), (dir / "predator_nullcline.csv").string());
  log << to_string(pos.verdict) << " margin=" << format_double(pos.margin) << '\n';
  return {{"verdict", to_string(pos.verdict)}, {"margin", pos.margin}, {"compared_points", pos.compared}};
}

json bounds_json(const Params& p) {
  const BoundsReport br = bounds(p, p.a2, default_eps1(p));
  return {{"delta", br.delta}, {"W1", br.W1}, {"Q_bound", br.Q_bound}, {"eps1", br.eps1},
          {"K1", br.K1},       {"K2", br.K2}, {"hypothesis_ok", br.hypothesis_ok}, {"notes", br.notes}};
}

json cmd_extinction(const ScenarioConfig& cfg, const fs::path& dir, std::ostream& log) {
  if (!cfg.extinction.ic) throw MissingBlock("extinction needs [extinction] x1, x2");
  const State ic = *cfg.extinction.ic;
  const ExtinctionVerdict v = simulate_extinction(cfg.params, ic, cfg.integrator);
  write_trajectory(integrate(cfg.params, ic, cfg.integrator), (dir / "trajectory.csv").string());
  IntegratorOptions uo = cfg.integrator;
  uo.blowup_ceiling = std::max(uo.blowup_ceiling, 1.0 / uo.extinction_threshold);
  write_trajectory(integrate_u_system(cfg.params, State(1.0 / ic(0), ic(1)), uo),
                   (dir / "u_trajectory.csv").string());
  json report = {{"criterion_met", v.criterion_met}, {"lhs", v.lhs},   {"rhs", v.rhs},
                 {"u0", v.u0},                       {"notes", v.notes}, {"bounds", bounds_json(cfg.params)}};
  const auto& sim = *v.simulated;
  report["x_system"] = verdict_json(sim.x_system);
  report["u_system"] = verdict_json(sim.u_system);
  if (sim.relative_gap) report["relative_gap"] = *sim.relative_gap;
  log << "x-system " << to_string(sim.x_system.kind) << " at t=" << format_double(sim.x_system.time)
      << "; u-system " << to_string(sim.u_system.kind) << " at t=" << format_double(sim.u_system.time) << '\n';
  return report;
}

json cmd_refuge_threshold(const ScenarioConfig& cfg, const fs::path&, std::ostream& log) {
  if (!cfg.extinction.ic) throw MissingBlock("refuge-threshold needs [extinction] x1, x2");
  const double K2 = cfg.extinction.K2.value_or(default_K2(cfg.params));
  const RefugeThreshold t = refuge_threshold((*cfg.extinction.ic)(0), cfg.params, K2);
  log << "r* = " << format_double(t.value) << (t.clamped ? " (clamped)" : "") << '\n';
  json report = {{"r_star", t.value}, {"raw", t.raw}, {"v0", t.v0}, {"K2", K2}, {"clamped", t.clamped}};
  if (!t.note.empty()) report["note"] = t.note;
  return report;
}

json cmd_verify_assumptions(const ScenarioConfig& cfg, const fs::path&, std::ostream& log) {
  const AssumptionReport rep = verify_assumptions(cfg.params);
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"id", c.id}, {"description", c.description}, {"status", to_string(c.status)}, {"detail", c.detail}});
    log << c.id << ' ' << to_string(c.status) << ": " << c.description << '\n';
  }
  return {{"all_pass", rep.all_pass()}, {"checks", checks}};
}

using Handler = json (*)(const ScenarioConfig&, const fs::path&, std::ostream&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"simulate", &cmd_simulate},
      {"equilibria", &cmd_equilibria},
      {"sweep", &cmd_sweep},
      {"separatrix", &cmd_separatrix},
      {"extinction", &cmd_extinction},
      {"refuge-threshold", &cmd_refuge_threshold},
      {"verify-assumptions", &cmd_verify_assumptions},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : handlers()) n.push_back(name);
    return n;
  }();
  return names;
}

int run_command(const std::string& cmd, const ScenarioConfig& cfg, const std::string& out_dir, std::ostream& log) {
  Handler fn = nullptr;
  for (const auto& [name, h] : handlers())
    if (name == cmd) fn = h;
  if (!fn) {
    log << "error: unknown command '" << cmd << "'\n";
    return kExitConfig;
  }
  const fs::path dir(out_dir);
  try {
    fs::create_directories(dir);
    json report = fn(cfg, dir, log);
    report["command"] = cmd;
    report["params"] = params_json(cfg.params);
    write_report(report, dir);
    return kExitOk;
  } catch (const MissingBlock& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    // Precondition and domain failures of the analysis itself.
    log << "error: " << e.what() << '\n';
    write_report({{"command", cmd}, {"params", params_json(cfg.params)}, {"error", e.what()}}, dir);
    return kExitDomain;
  }
}

int run_command_file(const std::string& cmd, const std::string& config_path, const std::string& out_dir,
                     std::ostream& log) {
  ScenarioConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run_command(cmd, cfg, out_dir, log);
}

}  // namespace ppdyn
