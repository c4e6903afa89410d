#pragma once

#include <vector>

#include "glmcf/angle.hpp"
#include "glmcf/flow.hpp"
#include "glmcf/metric.hpp"

namespace glmcf {

// One time slice of every monitored scalar. residual_* columns are zero
// except in runs that evaluate the evolution-identity residuals.
struct MonitorSample {
  double t = 0.0;
  double osc_theta = 0.0;
  double theta_dot_sup = 0.0;
  double theta_dot_inf = 0.0;
  double tau_max = 0.0;
  double vartheta_max = 0.0;
  double rho_max = 0.0;
  double bigtheta_max = 0.0;
  double upsilon_max = 0.0;  // from composed stencils, O(h^2) only
  double q_max = 0.0;
  double branch_residual = 0.0;
  double lambda_max = 0.0;
  double u_tilde_sup = 0.0;
  double residual_theta = 0.0;
  double residual_tau = 0.0;
  double residual_vartheta = 0.0;
  double residual_rho = 0.0;
  double residual_bigtheta = 0.0;
};

// Constants entering the monitors: the measured reference angle, the anchor
// value of u at the origin at t = 0, and the Q-weights.
struct MonitorContext {
  double theta_hat = 0.0;
  double u0_at_p = 0.0;
  double k1 = 1.0;
  double k2 = 1.0;
};

MonitorSample scalar_monitors(const GraphState& state, const MetricField& m,
                              const AngleBundle& bundle, const MonitorContext& ctx);

// A retained slice for residual evaluation: three consecutive ones at equal
// spacing give a centered time derivative.
struct Slice {
  GraphState state;
  AngleBundle bundle;
};

// Term toggles for the curvature commutators; disabling one must make the
// corresponding residual stop converging under refinement (sign tripwire).
struct ResidualOptions {
  bool include_xi1 = true;
  bool include_xi2 = true;
};

struct LemmaResiduals {
  double theta_evol = 0.0;
  double tau = 0.0;
  double vartheta = 0.0;
  double rho = 0.0;
  double bigtheta = 0.0;
};

// Sup-norms of centered d/dt minus Delta_eta minus the exact right-hand side
// for theta and the four monitored quantities. Slices must be equally spaced
// in time; the middle slice is the evaluation point.
LemmaResiduals lemma_residuals(const Slice& a, const Slice& b, const Slice& c,
                               const MetricField& m, const MonitorContext& ctx,
                               const ResidualOptions& opt = {});

double residual_theta_evolution(const Slice& a, const Slice& b, const Slice& c,
                                const MetricField& m);

// Harnack functional F = t (eta^{ij} f_i f_j - alpha f_t), f = log v, with
// f_t evaluated through the companion PDE. Returns sup_x F.
double harnack_functional(const CompanionState& cs, const TensorField& eta_inv,
                          const MetricField& m, double alpha);

struct OscillationSeries {
  std::vector<double> t;
  std::vector<double> chi;  // osc of theta-dot per sample
  bool monotone_ok = true;  // non-increasing within 1e-10 slack
  std::vector<double> unit_ratios;  // chi(m+1)/chi(m) at integer times
};

OscillationSeries oscillation_series(const std::vector<MonitorSample>& samples);

struct DecayFit {
  double c1 = 0.0;  // amplitude
  double c2 = 0.0;  // rate, series ~ c1 e^{-c2 t}
  double r_squared = 0.0;
};

// Least-squares line on (t, log s) restricted to [t_a, t_b]. Throws
// config_error on non-positive entries or fewer than two points in window.
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& s, double t_a,
                   double t_b);

}  // namespace glmcf
