#include "glmcf/flow.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "glmcf/errors.hpp"
#include "glmcf/linalg.hpp"
#include "glmcf/reduce.hpp"

namespace glmcf {

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::TMax: return "t_max";
    case Termination::Diverged: return "diverged";
  }
  return "unknown";
}

namespace {

// Angle field without the determinant cross-check; this is the hot path the
// integrator evaluates four times per step.
ScalarField theta_of(const GraphState& state, const MetricField& m) {
  const PeriodicGrid& grid = m.grid;
  const int n = grid.dim;
  const std::size_t npts = grid.size();

  const CovectorField chi = assemble_chi(state, m);
  const SymTensorField chi_prime = oneform_covariant_derivative(m, chi, nullptr, 0.0);

  ScalarField theta(grid, 0);
  double cp[9], isq[9], a[9], tmp[9], ev[3];
  for (std::size_t p = 0; p < npts; ++p) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cp[i * n + j] = chi_prime.value(p, i, j);
        isq[i * n + j] = m.g_isqrt.value(p, i, j);
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += isq[i * n + k] * cp[k * n + j];
        tmp[i * n + j] = s;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += tmp[i * n + k] * isq[k * n + j];
        a[i * n + j] = s;
      }
    sym_eigen(n, a, ev, nullptr);
    double th = 0.0;
    for (int i = 0; i < n; ++i) th += std::atan(ev[i]);
    theta.at(p) = th;
  }
  return theta;
}

}  // namespace

ScalarField flow_rhs(const GraphState& state, const MetricField& m) { return theta_of(state, m); }

double stable_dt(const MetricField& m, double cfl) {
  if (!(cfl > 0.0) || cfl > 0.5) throw config_error("cfl must lie in (0, 0.5]");
  const double h = m.grid.spacing;
  return cfl * h * h / (2.0 * m.grid.dim * m.sup_ginv_lambda_max);
}

GraphState step_rk4(const GraphState& state, const MetricField& m, double dt) {
  const std::size_t npts = m.grid.size();

  GraphState work = state;
  const ScalarField k1 = theta_of(work, m);

  auto shift = [&](const ScalarField& k, double a) {
    const double* up = state.u.plane(0);
    const double* kp = k.plane(0);
    double* wp = work.u.plane(0);
    for (std::size_t p = 0; p < npts; ++p) wp[p] = up[p] + a * kp[p];
  };

  shift(k1, 0.5 * dt);
  const ScalarField k2 = theta_of(work, m);
  shift(k2, 0.5 * dt);
  const ScalarField k3 = theta_of(work, m);
  shift(k3, dt);
  const ScalarField k4 = theta_of(work, m);

  GraphState out = state;
  {
    double* op = out.u.plane(0);
    const double* a = k1.plane(0);
    const double* b = k2.plane(0);
    const double* c = k3.plane(0);
    const double* d = k4.plane(0);
    const double w = dt / 6.0;
    for (std::size_t p = 0; p < npts; ++p) op[p] += w * (a[p] + 2.0 * b[p] + 2.0 * c[p] + d[p]);
  }
  out.t = state.t + dt;

  if (!all_finite(out.u)) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "flow diverged: non-finite potential at t = %.6g", out.t);
    throw numeric_error(buf);
  }
  return out;
}

namespace {

ScalarField companion_rhs(const ScalarField& v, const TensorField& eta_inv, const MetricField& m) {
  const SymTensorField h = covariant_hessian(m, v);
  const int n = m.grid.dim;
  const std::size_t npts = m.grid.size();
  ScalarField out(m.grid, 0);
  double* op = out.plane(0);
  for (std::size_t p = 0; p < npts; ++p) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += eta_inv.value(p, i, j) * h.value(p, i, j);
    op[p] = s;
  }
  return out;
}

}  // namespace

void companion_step(CompanionState& cs, const TensorField& eta_inv, const MetricField& m,
                    double dt) {
  const std::size_t npts = m.grid.size();

  ScalarField work = cs.v;
  const ScalarField k1 = companion_rhs(cs.v, eta_inv, m);
  auto shift = [&](const ScalarField& k, double a) {
    const double* vp = cs.v.plane(0);
    const double* kp = k.plane(0);
    double* wp = work.plane(0);
    for (std::size_t p = 0; p < npts; ++p) wp[p] = vp[p] + a * kp[p];
  };
  shift(k1, 0.5 * dt);
  const ScalarField k2 = companion_rhs(work, eta_inv, m);
  shift(k2, 0.5 * dt);
  const ScalarField k3 = companion_rhs(work, eta_inv, m);
  shift(k3, dt);
  const ScalarField k4 = companion_rhs(work, eta_inv, m);

  double* vp = cs.v.plane(0);
  const double* a = k1.plane(0);
  const double* b = k2.plane(0);
  const double* c = k3.plane(0);
  const double* d = k4.plane(0);
  const double w = dt / 6.0;
  for (std::size_t p = 0; p < npts; ++p) vp[p] += w * (a[p] + 2.0 * b[p] + 2.0 * c[p] + d[p]);
  cs.t += dt;

  const double vmin = inf(std::span<const double>(vp, npts));
  if (!(vmin > 0.0)) {
    char buf[112];
    std::snprintf(buf, sizeof(buf),
                  "companion lost positivity (min v = %.6g at t = %.6g); reduce dt", vmin, cs.t);
    throw numeric_error(buf);
  }
}

void recenter(const ScalarField& u, const MetricField& m, ScalarField& u_tilde, double& mean) {
  const std::size_t npts = m.grid.size();
  std::vector<double> wu(npts);
  const double* up = u.plane(0);
  const double* dp = m.sqrt_det_g.plane(0);
  for (std::size_t p = 0; p < npts; ++p) wu[p] = up[p] * dp[p];
  const double num = pairwise_sum(wu);
  const double den = pairwise_sum(std::span<const double>(dp, npts));
  mean = num / den;

  u_tilde = u;
  double* tp = u_tilde.plane(0);
  for (std::size_t p = 0; p < npts; ++p) tp[p] -= mean;
}

FlowResult run_flow(GraphState state, const MetricField& m, const FlowConfig& cfg,
                    const SampleFn& on_sample) {
  if (cfg.t_max <= 0.0) throw config_error("t_max must be positive");
  if (cfg.sample_every < 1) throw config_error("sample_every must be at least 1");

  FlowResult res;
  res.dt = stable_dt(m, cfg.cfl);

  long step = 0;
  while (true) {
    const bool at_end = state.t >= cfg.t_max - 0.5 * res.dt;
    if (step % cfg.sample_every == 0 || at_end) {
      if (!all_finite(state.u)) {
        res.termination = Termination::Diverged;
        break;
      }
      AngleBundle bundle;
      try {
        bundle = analyze_graph(state, m);
      } catch (const numeric_error&) {
        res.termination = Termination::Diverged;
        break;
      }
      if (bundle.lambda_max > 10.0) {
        res.termination = Termination::Diverged;
        break;
      }
      if (on_sample) on_sample(state, bundle, step);
      if (special_lagrangian_residual(bundle) <= cfg.osc_tol) {
        res.termination = Termination::Converged;
        break;
      }
      if (at_end) {
        res.termination = Termination::TMax;
        break;
      }
    }
    try {
      state = step_rk4(state, m, res.dt);
    } catch (const numeric_error&) {
      res.termination = Termination::Diverged;
      break;
    }
    ++step;
  }

  res.state = std::move(state);
  res.steps = step;
  return res;
}

}  // namespace glmcf
