#include "ppdyn/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ppdyn {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"model", {"a1", "a2", "b1", "w0", "w1", "d", "m1", "m2", "r"}},
      {"integrator",
       {"rel_tol", "abs_tol", "max_step", "min_step", "extinction_threshold", "horizon", "blowup_ceiling",
        "max_steps"}},
      {"simulate", {"x1", "x2"}},
      {"equilibria", {"scan_points"}},
      {"sweep", {"param", "lo", "hi", "n", "scan_points"}},
      {"separatrix", {"probes", "probe_count", "horizon"}},
      {"extinction", {"x1", "x2", "K2"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Sections = std::map<std::string, std::map<std::string, Entry>>;

class Reader {
 public:
  Reader(const Sections& s, std::vector<std::string>& errors) : s_(s), errors_(errors) {}

  bool has(const std::string& sec) const { return s_.count(sec) > 0; }

  const Entry* find(const std::string& sec, const std::string& key) const {
    auto it = s_.find(sec);
    if (it == s_.end()) return nullptr;
    auto jt = it->second.find(key);
    return jt == it->second.end() ? nullptr : &jt->second;
  }

  std::optional<double> number(const std::string& sec, const std::string& key) {
    const Entry* e = find(sec, key);
    if (!e) return std::nullopt;
    return parse_double(*e, sec + "." + key);
  }

  std::optional<long long> integer(const std::string& sec, const std::string& key) {
    const Entry* e = find(sec, key);
    if (!e) return std::nullopt;
    long long v = 0;
    const char* end = e->value.data() + e->value.size();
    auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      fail(*e, sec + "." + key + " must be an integer, got '" + e->value + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::vector<double>> list(const std::string& sec, const std::string& key) {
    const Entry* e = find(sec, key);
    if (!e) return std::nullopt;
    std::vector<double> out;
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto v = parse_double({trim(item), e->line}, sec + "." + key);
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }

  void fail(const Entry& e, const std::string& msg) { errors_.push_back("line " + std::to_string(e.line) + ": " + msg); }

 private:
  std::optional<double> parse_double(const Entry& e, const std::string& field) {
    double v = 0.0;
    const char* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end || e.value.empty()) {
      fail(e, field + " must be a number, got '" + e.value + "'");
      return std::nullopt;
    }
    return v;
  }

  const Sections& s_;
  std::vector<std::string>& errors_;
};

std::optional<State> read_ic(Reader& rd, const std::string& sec, std::vector<std::string>& errors) {
  auto x1 = rd.number(sec, "x1"), x2 = rd.number(sec, "x2");
  if (!x1 && !x2) return std::nullopt;
  if (!x1 || !x2) {
    errors.push_back(std::string("missing required field ") + (x1 ? "x2" : "x1") + " in [" + sec + "]");
    return std::nullopt;
  }
  if (*x1 < 0.0 || *x2 < 0.0) {
    errors.push_back("[" + sec + "] initial condition must be non-negative");
    return std::nullopt;
  }
  return State(*x1, *x2);
}

}  // namespace

ConfigResult parse_config(const std::string& text) {
  ConfigResult res;
  auto& errors = res.errors;
  Sections sections;
  std::string current;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "unterminated section header");
        continue;
      }
      current = trim(line.substr(1, line.size() - 2));
      if (!schema().count(current)) {
        errors.push_back(where + "unknown section [" + current + "]");
        current = "!";
      } else if (sections.count(current)) {
        errors.push_back(where + "duplicate section [" + current + "]");
      }
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(where + "expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (current.empty()) {
      errors.push_back(where + "key '" + key + "' outside any section");
      continue;
    }
    if (current == "!") continue;
    if (!schema().at(current).count(key)) {
      errors.push_back(where + "unknown key '" + key + "' in [" + current + "]");
      continue;
    }
    if (sections[current].count(key)) {
      errors.push_back(where + "duplicate key '" + key + "' in [" + current + "]");
      continue;
    }
    sections[current][key] = {value, line_no};
  }

  Reader rd(sections, errors);
  ScenarioConfig cfg;

  RawParams raw_params;
  raw_params.a1 = rd.number("model", "a1");
  raw_params.a2 = rd.number("model", "a2");
  raw_params.b1 = rd.number("model", "b1");
  raw_params.w0 = rd.number("model", "w0");
  raw_params.w1 = rd.number("model", "w1");
  raw_params.d = rd.number("model", "d");
  raw_params.m1 = rd.number("model", "m1");
  raw_params.m2 = rd.number("model", "m2");
  raw_params.r = rd.number("model", "r");
  const bool numbers_ok = errors.empty();
  const ValidationResult vr = validate_params(raw_params);
  if (vr.ok()) {
    cfg.params = *vr.params;
  } else if (numbers_ok) {
    for (const auto& e : vr.errors) errors.push_back("[model] " + e);
  }

  auto set_num = [&](const char* key, double& field) {
    if (auto v = rd.number("integrator", key)) field = *v;
  };
  set_num("rel_tol", cfg.integrator.rel_tol);
  set_num("abs_tol", cfg.integrator.abs_tol);
  set_num("max_step", cfg.integrator.max_step);
  set_num("min_step", cfg.integrator.min_step);
  set_num("extinction_threshold", cfg.integrator.extinction_threshold);
  set_num("horizon", cfg.integrator.horizon);
  set_num("blowup_ceiling", cfg.integrator.blowup_ceiling);
  if (auto v = rd.integer("integrator", "max_steps")) {
    if (*v <= 0)
      errors.push_back("[integrator] max_steps must be > 0");
    else
      cfg.integrator.max_steps = static_cast<std::size_t>(*v);
  }
  try {
    cfg.integrator.validate();
  } catch (const std::invalid_argument& e) {
    errors.push_back(std::string("[integrator] ") + e.what());
  }

  cfg.simulate_ic = read_ic(rd, "simulate", errors);
  cfg.extinction.ic = read_ic(rd, "extinction", errors);
  if (auto v = rd.number("extinction", "K2")) {
    if (!(*v > 0.0))
      errors.push_back("[extinction] K2 must be > 0");
    else
      cfg.extinction.K2 = *v;
  }

  auto scan = [&](const char* sec, int& field) {
    if (auto v = rd.integer(sec, "scan_points")) {
      if (*v < 100)
        errors.push_back(std::string("[") + sec + "] scan_points must be >= 100");
      else
        field = static_cast<int>(*v);
    }
  };
  scan("equilibria", cfg.scan_points);

  if (rd.has("sweep")) {
    SweepSpec sw;
    if (const Entry* e = rd.find("sweep", "param")) {
      try {
        sw.param = parse_sweep_param(e->value);
      } catch (const std::invalid_argument& ex) {
        rd.fail(*e, ex.what());
      }
    } else {
      errors.push_back("missing required field param in [sweep]");
    }
    auto lo = rd.number("sweep", "lo"), hi = rd.number("sweep", "hi");
    if (!lo) errors.push_back("missing required field lo in [sweep]");
    if (!hi) errors.push_back("missing required field hi in [sweep]");
    if (lo && hi && !(*lo < *hi)) errors.push_back("[sweep] lo must be < hi");
    if (lo) sw.lo = *lo;
    if (hi) sw.hi = *hi;
    if (auto n = rd.integer("sweep", "n")) {
      if (*n < 50)
        errors.push_back("[sweep] n must be >= 50");
      else
        sw.n = static_cast<int>(*n);
    }
    scan("sweep", sw.scan_points);
    cfg.sweep = sw;
  }

  if (auto probes = rd.list("separatrix", "probes")) cfg.separatrix.probes = *probes;
  if (auto c = rd.integer("separatrix", "probe_count")) {
    if (*c < 2)
      errors.push_back("[separatrix] probe_count must be >= 2");
    else
      cfg.separatrix.probe_count = static_cast<int>(*c);
  }
  if (auto h = rd.number("separatrix", "horizon")) {
    if (!(*h > 0.0))
      errors.push_back("[separatrix] horizon must be > 0");
    else
      cfg.separatrix.horizon = *h;
  }

  if (errors.empty()) res.config = cfg;
  return res;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ConfigResult res = parse_config(ss.str());
  if (!res.ok()) {
    std::string msg = path + ":";
    for (const auto& e : res.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return *res.config;
}

}  // namespace ppdyn
