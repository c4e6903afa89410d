#include "glmcf/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "glmcf/errors.hpp"

namespace glmcf {

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Bootstrap: return "bootstrap";
    case Scenario::Stability: return "stability";
    case Scenario::Uniqueness: return "uniqueness";
    case Scenario::LemmaCheck: return "lemma_check";
    case Scenario::Harnack: return "harnack";
    case Scenario::Convergence: return "convergence";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw config_error("config line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("config line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw config_error("config line " + std::to_string(lineno) + ": key outside any section");
    kv[section + "." + key] = val;
  }
  return kv;
}

double to_double(const std::map<std::string, std::string>& kv, const std::string& key,
                 double dflt) {
  const auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw config_error("config key " + key + ": not a number: " + it->second);
  }
}

long to_long(const std::map<std::string, std::string>& kv, const std::string& key, long dflt) {
  const auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  try {
    std::size_t pos = 0;
    const long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw config_error("config key " + key + ": not an integer: " + it->second);
  }
}

std::string get(const std::map<std::string, std::string>& kv, const std::string& key,
                const std::string& dflt) {
  const auto it = kv.find(key);
  return it == kv.end() ? dflt : it->second;
}

Scenario parse_scenario(const std::string& s) {
  if (s == "bootstrap") return Scenario::Bootstrap;
  if (s == "stability") return Scenario::Stability;
  if (s == "uniqueness") return Scenario::Uniqueness;
  if (s == "lemma_check") return Scenario::LemmaCheck;
  if (s == "harnack") return Scenario::Harnack;
  if (s == "convergence") return Scenario::Convergence;
  throw config_error("unknown scenario: " + s);
}

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

TrigPoly poly_key(const std::map<std::string, std::string>& kv, const std::string& key, int dim) {
  const auto it = kv.find(key);
  if (it == kv.end() || trim(it->second).empty() || it->second == "0") return TrigPoly();
  try {
    return TrigPoly::parse(it->second, dim);
  } catch (const config_error& e) {
    throw config_error("config key " + key + ": " + e.what());
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_text(const std::string& text,
                                             const std::vector<std::string>& overrides) {
  auto kv = parse_text(text);
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(ov.substr(0, eq));
    if (key.find('.') == std::string::npos || key.front() == '.' || key.back() == '.')
      throw config_error("--set expects section.key=value, got: " + ov);
    kv[key] = trim(ov.substr(eq + 1));
  }

  ExperimentConfig cfg;
  cfg.raw = kv;

  cfg.scenario = parse_scenario(get(kv, "experiment.scenario", "bootstrap"));
  cfg.seed = static_cast<std::uint64_t>(to_long(kv, "experiment.seed", 1));
  cfg.out_dir = get(kv, "experiment.out_dir", "out");

  cfg.n = static_cast<int>(to_long(kv, "grid.n", 2));
  cfg.N = static_cast<int>(to_long(kv, "grid.N", 64));
  if (cfg.n < 1 || cfg.n > 3) throw config_error("grid.n must be 1, 2 or 3");
  if (cfg.N < 16 || !power_of_two(cfg.N))
    throw config_error("grid.N must be a power of two >= 16");

  const std::string family = get(kv, "metric.family", "flat");
  if (family == "flat") {
    cfg.metric = MetricSpec::flat();
  } else if (family == "conformal") {
    cfg.metric = MetricSpec::conformal(poly_key(kv, "metric.f", cfg.n));
  } else if (family == "diagonal") {
    std::array<TrigPoly, 3> d;
    for (int i = 0; i < cfg.n; ++i) {
      const std::string key = "metric.d" + std::to_string(i + 1);
      if (!kv.count(key)) throw config_error("diagonal metric needs key " + key);
      d[i] = poly_key(kv, key, cfg.n);
    }
    cfg.metric = MetricSpec::diagonal(std::move(d));
  } else {
    throw config_error("metric.family must be flat, conformal or diagonal");
  }
  cfg.metric.fd_derivatives = get(kv, "metric.fd_derivatives", "false") == "true";

  if (kv.count("class.c")) {
    std::istringstream cs(kv.at("class.c"));
    for (int i = 0; i < cfg.n; ++i)
      if (!(cs >> cfg.harmonic[i]))
        throw config_error("class.c needs " + std::to_string(cfg.n) + " numbers");
    double extra;
    if (cs >> extra) throw config_error("class.c needs " + std::to_string(cfg.n) + " numbers");
  }

  cfg.phi_hat = poly_key(kv, "initial.phi_hat", cfg.n);
  cfg.u0 = poly_key(kv, "initial.u0", cfg.n);
  cfg.u0_alt = poly_key(kv, "initial.u0_alt", cfg.n);
  cfg.amplitude = to_double(kv, "initial.amplitude", 0.05);
  cfg.ladder_steps = static_cast<int>(to_long(kv, "stability.ladder_steps", 4));
  if (cfg.ladder_steps < 1) throw config_error("stability.ladder_steps must be >= 1");

  cfg.flow.cfl = to_double(kv, "flow.cfl", 0.2);
  cfg.flow.t_max = to_double(kv, "flow.t_max", 10.0);
  cfg.flow.osc_tol = to_double(kv, "flow.osc_tol", 1e-10);
  cfg.flow.sample_every = static_cast<int>(to_long(kv, "flow.sample_every", 10));
  cfg.flow.checkpoint_every = static_cast<int>(to_long(kv, "flow.checkpoint_every", 0));
  if (!(cfg.flow.cfl > 0.0) || cfg.flow.cfl > 0.5)
    throw config_error("flow.cfl must lie in (0, 0.5]");
  if (cfg.flow.t_max <= 0.0) throw config_error("flow.t_max must be positive");
  if (cfg.flow.sample_every < 1) throw config_error("flow.sample_every must be >= 1");

  cfg.monitors.k1 = to_double(kv, "monitors.k1", 1.0);
  cfg.monitors.k2 = to_double(kv, "monitors.k2", 1.0);
  cfg.monitors.theta_hat = to_double(kv, "monitors.theta_hat", 0.0);
  cfg.monitors.u0_at_p = to_double(kv, "monitors.u0_at_p", 0.0);
  cfg.alpha = to_double(kv, "monitors.alpha", 1.5);
  if (!(cfg.alpha > 1.0 && cfg.alpha < 2.0))
    throw config_error("monitors.alpha must lie in (1, 2)");

  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path,
                                             const std::vector<std::string>& overrides) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return from_text(buf.str(), overrides);
}

std::string ExperimentConfig::to_text() const {
  // Start from the raw keys, then overwrite with resolved values so a dump
  // of a parsed config is parseable and complete.
  std::map<std::string, std::string> kv = raw;
  char num[64];
  auto put_d = [&](const std::string& k, double v) {
    std::snprintf(num, sizeof(num), "%.17g", v);
    kv[k] = num;
  };

  kv["experiment.scenario"] = scenario_name(scenario);
  kv["experiment.seed"] = std::to_string(seed);
  kv["experiment.out_dir"] = out_dir;
  kv["grid.n"] = std::to_string(n);
  kv["grid.N"] = std::to_string(N);
  switch (metric.family) {
    case MetricSpec::Family::Flat: kv["metric.family"] = "flat"; break;
    case MetricSpec::Family::Conformal:
      kv["metric.family"] = "conformal";
      kv["metric.f"] = metric.conformal_f.to_string(n);
      break;
    case MetricSpec::Family::Diagonal:
      kv["metric.family"] = "diagonal";
      for (int i = 0; i < n; ++i)
        kv["metric.d" + std::to_string(i + 1)] = metric.diagonal_d[i].to_string(n);
      break;
  }
  kv["metric.fd_derivatives"] = metric.fd_derivatives ? "true" : "false";
  {
    std::string c;
    for (int i = 0; i < n; ++i) {
      std::snprintf(num, sizeof(num), "%.17g", harmonic[i]);
      if (i) c += ' ';
      c += num;
    }
    kv["class.c"] = c;
  }
  if (!phi_hat.empty()) kv["initial.phi_hat"] = phi_hat.to_string(n);
  if (!u0.empty()) kv["initial.u0"] = u0.to_string(n);
  if (!u0_alt.empty()) kv["initial.u0_alt"] = u0_alt.to_string(n);
  put_d("initial.amplitude", amplitude);
  kv["stability.ladder_steps"] = std::to_string(ladder_steps);
  put_d("flow.cfl", flow.cfl);
  put_d("flow.t_max", flow.t_max);
  put_d("flow.osc_tol", flow.osc_tol);
  kv["flow.sample_every"] = std::to_string(flow.sample_every);
  kv["flow.checkpoint_every"] = std::to_string(flow.checkpoint_every);
  put_d("monitors.k1", monitors.k1);
  put_d("monitors.k2", monitors.k2);
  put_d("monitors.theta_hat", monitors.theta_hat);
  put_d("monitors.u0_at_p", monitors.u0_at_p);
  put_d("monitors.alpha", alpha);

  std::ostringstream os;
  std::string section;
  for (const auto& [key, val] : kv) {
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) os << '\n';
      os << '[' << sec << "]\n";
      section = sec;
    }
    os << key.substr(dot + 1) << " = " << val << '\n';
  }
  return os.str();
}

std::string ExperimentConfig::describe_keys() {
  return
      "[experiment]\n"
      "  scenario        bootstrap | stability | uniqueness | lemma_check | harnack | convergence\n"
      "  seed            64-bit integer for randomized fields (default 1)\n"
      "  out_dir         output directory (default out; --out overrides)\n"
      "[grid]\n"
      "  n               torus dimension, 1..3 (default 2)\n"
      "  N               points per axis, power of two >= 16 (default 64)\n"
      "[metric]\n"
      "  family          flat | conformal | diagonal (default flat)\n"
      "  f               conformal factor exponent, trig polynomial, e.g. '0.1 sin 1 0'\n"
      "  d1, d2, d3      diagonal entries, trig polynomials (diagonal family)\n"
      "  fd_derivatives  true to force stencil metric derivatives (default false)\n"
      "[class]\n"
      "  c               harmonic coefficients, n numbers, e.g. '0.3 0'\n"
      "[initial]\n"
      "  phi_hat         base potential, trig polynomial (default 0)\n"
      "  u0              initial flow potential, trig polynomial (default 0)\n"
      "  u0_alt          second initial potential for uniqueness twins\n"
      "  amplitude       scale for ladders / random fields (default 0.05)\n"
      "[stability]\n"
      "  ladder_steps    geometric amplitude ladder length (default 4)\n"
      "[flow]\n"
      "  cfl             fraction of the parabolic limit, (0, 0.5] (default 0.2)\n"
      "  t_max           integration horizon (default 10)\n"
      "  osc_tol         osc(theta) convergence threshold (default 1e-10)\n"
      "  sample_every    steps between monitor samples (default 10)\n"
      "  checkpoint_every  steps between mid-run checkpoints (default 0 = none)\n"
      "[monitors]\n"
      "  k1, k2          Q = rho + k1*vartheta + k2*tau weights (default 1, 1)\n"
      "  theta_hat       measured reference angle (filled by bootstrap)\n"
      "  u0_at_p         anchor value of u at the origin (filled at t=0)\n"
      "  alpha           Harnack exponent in (1,2) (default 1.5)\n"
      "\nTrig polynomial syntax: terms 'amp fn k1 [k2 [k3]] [phase]' joined\n"
      "with ';', fn in {sin, cos, const}, e.g. '0.05 sin 1 1; 0.02 cos 2 0'.\n";
}

}  // namespace glmcf
