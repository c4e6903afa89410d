#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glmcf/flow.hpp"
#include "glmcf/metric.hpp"
#include "glmcf/monitors.hpp"
#include "glmcf/trig_poly.hpp"

namespace glmcf {

enum class Scenario { Bootstrap, Stability, Uniqueness, LemmaCheck, Harnack, Convergence };

const char* scenario_name(Scenario s);

// Parsed experiment description. The text format is sectioned key = value
// lines ('#' comments); keys are addressed as "section.key" and CLI
// --set overrides use the same dotted names.
struct ExperimentConfig {
  Scenario scenario = Scenario::Bootstrap;
  int n = 2;
  int N = 64;
  MetricSpec metric;
  std::array<double, 3> harmonic{0.0, 0.0, 0.0};
  TrigPoly phi_hat;  // initial base potential
  TrigPoly u0;       // initial flow potential
  TrigPoly u0_alt;   // second twin for the uniqueness scenario
  double amplitude = 0.05;  // ladder base / random-field scale
  int ladder_steps = 4;
  FlowConfig flow;
  MonitorContext monitors;
  double alpha = 1.5;  // harnack exponent
  std::string out_dir = "out";
  std::uint64_t seed = 1;

  std::map<std::string, std::string> raw;  // every key as parsed

  static ExperimentConfig from_file(const std::string& path,
                                    const std::vector<std::string>& overrides = {});
  static ExperimentConfig from_text(const std::string& text,
                                    const std::vector<std::string>& overrides = {});

  // Re-emits the config as parseable text with every resolved value present.
  std::string to_text() const;

  // Lists every recognized key with its meaning (for --help).
  static std::string describe_keys();
};

}  // namespace glmcf
