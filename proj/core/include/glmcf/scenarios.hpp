#pragma once

#include <string>
#include <vector>

#include "glmcf/config.hpp"
#include "glmcf/flow.hpp"
#include "glmcf/monitors.hpp"

namespace glmcf {

// Flow run that records a MonitorSample at every sample time and optionally
// writes periodic checkpoints under checkpoint_dir.
struct MonitoredRun {
  FlowResult flow;
  std::vector<MonitorSample> samples;
};

MonitoredRun flow_with_monitors(GraphState state, const MetricField& m, const FlowConfig& fc,
                                const MonitorContext& ctx, int checkpoint_every = 0,
                                const std::string& checkpoint_dir = "");

// Runs the flow from the harmonic representative (u = 0 over phi_hat) until
// osc(theta) <= 1e-8, then folds the recentred limit potential into phi_hat
// and measures the constant reference angle. Throws numeric_error if the
// bootstrap fails to converge within t_max.
struct BootstrapResult {
  GraphState reference;  // u == 0, base_potential = limit potential
  double theta_hat = 0.0;
  std::vector<MonitorSample> samples;
};

BootstrapResult run_bootstrap(const ExperimentConfig& cfg, const MetricField& m);

// Dispatches on cfg.scenario, writes monitors.csv, report.txt, plots/ and
// checkpoints under cfg.out_dir. Returns the report text.
struct ScenarioOutcome {
  Termination termination = Termination::Converged;
  std::string report;
  std::vector<MonitorSample> samples;
};

ScenarioOutcome run_scenario(const ExperimentConfig& cfg);

// Continues a checkpointed run: reads <dir>/config.resolved.cfg next to the
// checkpoint, integrates to t_max and writes outputs under <dir>/resume/.
ScenarioOutcome resume_run(const std::string& checkpoint_path);

}  // namespace glmcf
