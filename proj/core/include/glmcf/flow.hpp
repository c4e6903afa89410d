#pragma once

#include <functional>

#include "glmcf/angle.hpp"
#include "glmcf/metric.hpp"

namespace glmcf {

struct FlowConfig {
  double cfl = 0.2;      // fraction of the parabolic stability limit, in (0, 0.5]
  double t_max = 10.0;
  double osc_tol = 1e-10;  // terminate once osc(theta) drops below this
  int sample_every = 10;   // steps between monitor samples
  int checkpoint_every = 0;  // steps between checkpoints (0 = none mid-run)
};

enum class Termination { Converged, TMax, Diverged };

const char* termination_name(Termination t);

struct CompanionState {
  ScalarField v;
  double t = 0.0;
};

// The PDE right-hand side: the Lagrangian angle field theta(chi_hat + du).
ScalarField flow_rhs(const GraphState& state, const MetricField& m);

// Parabolic step bound dt = cfl h^2 / (2n sup lambda_max(g^{-1})); eta >= g
// makes g^{-1} the worst case for the eta^{ij} operator.
double stable_dt(const MetricField& m, double cfl);

// Classical 4-stage explicit update of u; harmonic part and phi_hat are
// untouched. Throws numeric_error if the result is non-finite.
GraphState step_rk4(const GraphState& state, const MetricField& m, double dt);

// One RK4 update of the companion equation dv/dt = eta^{ij} v_{ij} with eta
// frozen for the step. Throws numeric_error if positivity is lost.
void companion_step(CompanionState& cs, const TensorField& eta_inv, const MetricField& m,
                    double dt);

// Splits u into a field of zero g-weighted mean plus its mean.
void recenter(const ScalarField& u, const MetricField& m, ScalarField& u_tilde, double& mean);

struct FlowResult {
  GraphState state;
  Termination termination = Termination::TMax;
  long steps = 0;
  double dt = 0.0;
};

// Sampling callback: called with the state, its angle bundle and the step
// index at every sample time (including step 0 and the final state).
using SampleFn = std::function<void(const GraphState&, const AngleBundle&, long)>;

// Integrates until osc(theta) <= osc_tol or t >= t_max; divergence
// (non-finite values or lambda_max > 10) ends the run with a partial record.
FlowResult run_flow(GraphState state, const MetricField& m, const FlowConfig& cfg,
                    const SampleFn& on_sample);

}  // namespace glmcf
