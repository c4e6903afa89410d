#include "glmcf/monitors.hpp"

#include <cmath>
#include <cstdio>
#include <span>

#include "glmcf/covariant.hpp"
#include "glmcf/errors.hpp"
#include "glmcf/reduce.hpp"

namespace glmcf {

namespace {

double plane_sup(const ScalarField& f) {
  return sup(std::span<const double>(f.plane(0), f.points()));
}

double plane_inf(const ScalarField& f) {
  return inf(std::span<const double>(f.plane(0), f.points()));
}

// eta^{ij} (covariant Hessian)_{ij} of a scalar.
ScalarField laplacian_eta(const ScalarField& f, const TensorField& eta_inv,
                          const MetricField& m) {
  const SymTensorField h = covariant_hessian(m, f);
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

ScalarField tau_field(const GraphState& st, const MonitorContext& ctx) {
  ScalarField out(st.u.grid(), 0);
  const double* up = st.u.plane(0);
  double* op = out.plane(0);
  const double off = ctx.u0_at_p + ctx.theta_hat * st.t;
  for (std::size_t p = 0; p < out.points(); ++p) {
    const double d = up[p] - off;
    op[p] = d * d;
  }
  return out;
}

ScalarField vartheta_field(const CovectorField& du, const MetricField& m) {
  const int n = m.grid.dim;
  ScalarField out(m.grid, 0);
  double* op = out.plane(0);
  for (std::size_t p = 0; p < out.points(); ++p) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += m.g_inv.value(p, i, j) * du.value(p, i) * du.value(p, j);
    op[p] = s;
  }
  return out;
}

ScalarField rho_field(const SymTensorField& uh, const MetricField& m) {
  const int n = m.grid.dim;
  ScalarField out(m.grid, 0);
  double* op = out.plane(0);
  for (std::size_t x = 0; x < out.points(); ++x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            s += m.g_inv.value(x, i, j) * m.g_inv.value(x, p, q) * uh.value(x, i, p) *
                 uh.value(x, j, q);
    op[x] = s;
  }
  return out;
}

ScalarField bigtheta_field(const TensorField& u3, const MetricField& m) {
  const int n = m.grid.dim;
  ScalarField out(m.grid, 0);
  double* op = out.plane(0);
  for (std::size_t x = 0; x < out.points(); ++x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < n; ++p)
        for (int j = 0; j < n; ++j)
          for (int q = 0; q < n; ++q)
            for (int k = 0; k < n; ++k)
              for (int r = 0; r < n; ++r)
                s += m.g_inv.value(x, i, p) * m.g_inv.value(x, j, q) * m.g_inv.value(x, k, r) *
                     u3.value(x, i, j, k) * u3.value(x, p, q, r);
    op[x] = s;
  }
  return out;
}

ScalarField upsilon_field(const TensorField& u4, const TensorField& eta_inv,
                          const MetricField& m) {
  const int n = m.grid.dim;
  ScalarField out(m.grid, 0);
  double* op = out.plane(0);
  for (std::size_t x = 0; x < out.points(); ++x) {
    double s = 0.0;
    for (int mm = 0; mm < n; ++mm)
      for (int ss = 0; ss < n; ++ss) {
        const double e = eta_inv.value(x, mm, ss);
        for (int i = 0; i < n; ++i)
          for (int p = 0; p < n; ++p)
            for (int j = 0; j < n; ++j)
              for (int q = 0; q < n; ++q)
                for (int k = 0; k < n; ++k)
                  for (int r = 0; r < n; ++r)
                    s += e * m.g_inv.value(x, i, p) * m.g_inv.value(x, j, q) *
                         m.g_inv.value(x, k, r) * u4.value(x, i, j, k, mm) *
                         u4.value(x, p, q, r, ss);
      }
    op[x] = s;
  }
  return out;
}

}  // namespace

MonitorSample scalar_monitors(const GraphState& state, const MetricField& m,
                              const AngleBundle& bundle, const MonitorContext& ctx) {
  const std::size_t npts = m.grid.size();

  const CovectorField du = gradient(state.u);
  const SymTensorField uh = covariant_hessian(m, state.u);
  const TensorField u3 = cov_deriv(m, uh);
  const TensorField u4 = cov_deriv(m, u3);

  const ScalarField tau = tau_field(state, ctx);
  const ScalarField vth = vartheta_field(du, m);
  const ScalarField rho = rho_field(uh, m);
  const ScalarField bth = bigtheta_field(u3, m);
  const ScalarField ups = upsilon_field(u4, bundle.eta_inv, m);

  MonitorSample s;
  s.t = state.t;
  s.theta_dot_sup = plane_sup(bundle.theta);
  s.theta_dot_inf = plane_inf(bundle.theta);
  s.osc_theta = s.theta_dot_sup - s.theta_dot_inf;
  s.tau_max = plane_sup(tau);
  s.vartheta_max = plane_sup(vth);
  s.rho_max = plane_sup(rho);
  s.bigtheta_max = plane_sup(bth);
  s.upsilon_max = plane_sup(ups);
  s.branch_residual = bundle.branch_residual;
  s.lambda_max = bundle.lambda_max;

  {
    double qmax = -1.0;
    const double* rp = rho.plane(0);
    const double* vp = vth.plane(0);
    const double* tp = tau.plane(0);
    for (std::size_t p = 0; p < npts; ++p) {
      const double q = rp[p] + ctx.k1 * vp[p] + ctx.k2 * tp[p];
      if (q > qmax) qmax = q;
    }
    s.q_max = qmax;
  }

  ScalarField ut;
  double mean = 0.0;
  recenter(state.u, m, ut, mean);
  s.u_tilde_sup = sup_abs(ut);
  return s;
}

namespace {

double check_spacing(const Slice& a, const Slice& b, const Slice& c) {
  const double d1 = b.state.t - a.state.t;
  const double d2 = c.state.t - b.state.t;
  if (d1 <= 0.0 || d2 <= 0.0 || std::fabs(d1 - d2) > 1e-9 * d1)
    throw config_error("residual window requires three equally spaced slices");
  return d1;
}

// sup |(fc - fa)/(2 dt) - lap - rhs|
double window_residual(const ScalarField& fa, const ScalarField& fc, const ScalarField& lap,
                       const ScalarField& rhs, double dt) {
  double worst = 0.0;
  const double* ap = fa.plane(0);
  const double* cp = fc.plane(0);
  const double* lp = lap.plane(0);
  const double* rp = rhs.plane(0);
  for (std::size_t p = 0; p < fa.points(); ++p) {
    const double r = std::fabs((cp[p] - ap[p]) / (2.0 * dt) - lp[p] - rp[p]);
    if (r > worst) worst = r;
  }
  return worst;
}

}  // namespace

double residual_theta_evolution(const Slice& a, const Slice& b, const Slice& c,
                                const MetricField& m) {
  const double dt = check_spacing(a, b, c);
  const ScalarField lap = laplacian_eta(b.bundle.theta, b.bundle.eta_inv, m);
  ScalarField zero(m.grid, 0);
  return window_residual(a.bundle.theta, c.bundle.theta, lap, zero, dt);
}

LemmaResiduals lemma_residuals(const Slice& a, const Slice& b, const Slice& c,
                               const MetricField& m, const MonitorContext& ctx,
                               const ResidualOptions& opt) {
  const double dt = check_spacing(a, b, c);
  const PeriodicGrid& grid = m.grid;
  const int n = grid.dim;
  const std::size_t npts = grid.size();
  const TensorField& ei = b.bundle.eta_inv;

  LemmaResiduals out;
  out.theta_evol = residual_theta_evolution(a, b, c, m);

  // Center-slice machinery.
  const CovectorField du = gradient(b.state.u);
  const SymTensorField uh = covariant_hessian(m, b.state.u);
  const TensorField u3 = cov_deriv(m, uh);
  const TensorField u4 = cov_deriv(m, u3);

  const SymTensorField& chi1 = b.bundle.chi_prime;
  const TensorField chi2 = cov_deriv(m, chi1);

  // The reference form chi_hat = c.dq + d phi_hat and its derivatives.
  GraphState hat;
  hat.harmonic = b.state.harmonic;
  hat.base_potential = b.state.base_potential;
  hat.u = ScalarField(grid, 0);
  const CovectorField chihat = assemble_chi(hat, m);
  const SymTensorField chihat1 = oneform_covariant_derivative(m, chihat, nullptr, 0.0);
  const TensorField chihat2 = cov_deriv(m, chihat1);
  const TensorField chihat3 = cov_deriv(m, chihat2);
  const TensorField chihat4 = cov_deriv(m, chihat3);

  const TensorField deta = cov_deriv(m, b.bundle.eta);
  const TensorField detainv = cov_deriv(m, ei);
  const TensorField ddetainv = cov_deriv(m, detainv);
  const TensorField dRm = cov_deriv(m, m.riemann);

  const ScalarField lap_u = laplacian_eta(b.state.u, ei, m);

  // tau.
  {
    const ScalarField fa = tau_field(a.state, ctx);
    const ScalarField fb = tau_field(b.state, ctx);
    const ScalarField fc = tau_field(c.state, ctx);
    const ScalarField lap = laplacian_eta(fb, ei, m);
    ScalarField rhs(grid, 0);
    double* rp = rhs.plane(0);
    const double* up = b.state.u.plane(0);
    const double* th = b.bundle.theta.plane(0);
    const double* lu = lap_u.plane(0);
    const double off = ctx.u0_at_p + ctx.theta_hat * b.state.t;
    for (std::size_t x = 0; x < npts; ++x) {
      double grad2 = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) grad2 += ei.value(x, i, j) * du.value(x, i) * du.value(x, j);
      rp[x] = 2.0 * (up[x] - off) * (th[x] - ctx.theta_hat - lu[x]) - 2.0 * grad2;
    }
    out.tau = window_residual(fa, fc, lap, rhs, dt);
  }

  // vartheta.
  {
    const ScalarField fa = vartheta_field(gradient(a.state.u), m);
    const ScalarField fb = vartheta_field(du, m);
    const ScalarField fc = vartheta_field(gradient(c.state.u), m);
    const ScalarField lap = laplacian_eta(fb, ei, m);
    ScalarField rhs(grid, 0);
    double* rp = rhs.plane(0);
    for (std::size_t x = 0; x < npts; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double gij = m.g_inv.value(x, i, j);
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
              const double epq = ei.value(x, p, q);
              s += -2.0 * epq * gij * uh.value(x, i, p) * uh.value(x, j, q);
              s += 2.0 * gij * epq * chihat2.value(x, p, q, i) * du.value(x, j);
              for (int l = 0; l < n; ++l)
                s += -2.0 * gij * epq * m.riemann.value(x, l, p, i, q) * du.value(x, l) *
                     du.value(x, j);
            }
        }
      rp[x] = s;
    }
    out.vartheta = window_residual(fa, fc, lap, rhs, dt);
  }

  // rho.
  {
    const ScalarField fa = rho_field(covariant_hessian(m, a.state.u), m);
    const ScalarField fb = rho_field(uh, m);
    const ScalarField fc = rho_field(covariant_hessian(m, c.state.u), m);
    const ScalarField lap = laplacian_eta(fb, ei, m);

    // Xi1_{pqil} = u_{kl} R^k_pqi + u_k R^k_pqi,l + u_{kp} R^k_iql
    //              + u_{ik} R^k_pql + u_{kq} R^k_ipl + u_k R^k_ipl,q.
    TensorField xi1(grid, 4);
    if (opt.include_xi1) {
      for (std::size_t x = 0; x < npts; ++x)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            for (int i = 0; i < n; ++i)
              for (int l = 0; l < n; ++l) {
                double s = 0.0;
                for (int k = 0; k < n; ++k) {
                  s += uh.value(x, k, l) * m.riemann.value(x, k, p, q, i);
                  s += du.value(x, k) * dRm.value(x, k, p, q, i, l);
                  s += uh.value(x, k, p) * m.riemann.value(x, k, i, q, l);
                  s += uh.value(x, i, k) * m.riemann.value(x, k, p, q, l);
                  s += uh.value(x, k, q) * m.riemann.value(x, k, i, p, l);
                  s += du.value(x, k) * dRm.value(x, k, i, p, l, q);
                }
                xi1.at(x, p, q, i, l) = s;
              }
    }

    ScalarField rhs(grid, 0);
    double* rp = rhs.plane(0);
    for (std::size_t x = 0; x < npts; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double gij = m.g_inv.value(x, i, j);
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const double gkl = m.g_inv.value(x, k, l);
              const double w = gij * gkl;
              const double ukj = uh.value(x, k, j);
              for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                  const double epq = ei.value(x, p, q);
                  // -2 eta^{pb} eta^{aq} eta_{ab,l} chi_{p,qi} u_{kj}
                  for (int aa = 0; aa < n; ++aa)
                    for (int bb = 0; bb < n; ++bb)
                      s += -2.0 * w * ei.value(x, p, bb) * ei.value(x, aa, q) *
                           deta.value(x, aa, bb, l) * chi2.value(x, p, q, i) * ukj;
                  s += 2.0 * w * epq * chihat3.value(x, p, q, i, l) * ukj;
                  s += -2.0 * w * epq * u3.value(x, i, l, p) * u3.value(x, k, j, q);
                  if (opt.include_xi1) s += 2.0 * w * epq * xi1.value(x, p, q, i, l) * ukj;
                }
            }
        }
      rp[x] = s;
    }
    out.rho = window_residual(fa, fc, lap, rhs, dt);
  }

  // Theta (third derivatives).
  {
    const ScalarField fa = bigtheta_field(cov_deriv(m, covariant_hessian(m, a.state.u)), m);
    const ScalarField fb = bigtheta_field(u3, m);
    const ScalarField fc = bigtheta_field(cov_deriv(m, covariant_hessian(m, c.state.u)), m);
    const ScalarField lap = laplacian_eta(fb, ei, m);
    const ScalarField ups = upsilon_field(u4, ei, m);

    // Xi2 product tensors, differentiated as whole fields so their covariant
    // structure is handled by cov_deriv.
    TensorField t1(grid, 3), t2(grid, 4), t3(grid, 3), t5(grid, 4);
    if (opt.include_xi2) {
      for (std::size_t x = 0; x < npts; ++x)
        for (int mm = 0; mm < n; ++mm)
          for (int ss = 0; ss < n; ++ss)
            for (int i = 0; i < n; ++i) {
              double s1 = 0.0;
              for (int l = 0; l < n; ++l) s1 += du.value(x, l) * m.riemann.value(x, l, mm, ss, i);
              t1.at(x, mm, ss, i) = s1;
            }
      for (std::size_t x = 0; x < npts; ++x)
        for (int mm = 0; mm < n; ++mm)
          for (int ss = 0; ss < n; ++ss)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) {
                double s2 = 0.0;
                for (int l = 0; l < n; ++l)
                  s2 += uh.value(x, l, mm) * m.riemann.value(x, l, i, ss, j) +
                        uh.value(x, i, l) * m.riemann.value(x, l, mm, ss, j);
                t2.at(x, mm, ss, i, j) = s2;
              }
      for (std::size_t x = 0; x < npts; ++x)
        for (int mm = 0; mm < n; ++mm)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              double s3 = 0.0;
              for (int l = 0; l < n; ++l) s3 += du.value(x, l) * m.riemann.value(x, l, i, mm, j);
              t3.at(x, mm, i, j) = s3;
            }
      for (std::size_t x = 0; x < npts; ++x)
        for (int mm = 0; mm < n; ++mm)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k) {
                double s5 = 0.0;
                for (int l = 0; l < n; ++l)
                  s5 += uh.value(x, l, j) * m.riemann.value(x, l, i, mm, k) +
                        uh.value(x, i, l) * m.riemann.value(x, l, j, mm, k);
                t5.at(x, mm, i, j, k) = s5;
              }
    }
    const TensorField t1cc = opt.include_xi2 ? cov_deriv(m, cov_deriv(m, t1)) : TensorField();
    const TensorField t2c = opt.include_xi2 ? cov_deriv(m, t2) : TensorField();
    const TensorField t3cc = opt.include_xi2 ? cov_deriv(m, cov_deriv(m, t3)) : TensorField();
    const TensorField t5c = opt.include_xi2 ? cov_deriv(m, t5) : TensorField();

    auto xi2_at = [&](std::size_t x, int mm, int ss, int i, int j, int k) {
      double s = t1cc.value(x, mm, ss, i, j, k) +  // (u_l R^l_msi)_,jk
                 t2c.value(x, mm, ss, i, j, k) +   // (u_lm R^l_isj + u_il R^l_msj)_,k
                 t3cc.value(x, mm, i, j, ss, k) +  // (u_l R^l_imj)_,sk
                 t5c.value(x, mm, i, j, k, ss);    // (u_lj R^l_imk + u_il R^l_jmk)_,s
      for (int l = 0; l < n; ++l)
        s += u3.value(x, l, j, mm) * m.riemann.value(x, l, i, ss, k) +
             u3.value(x, i, l, mm) * m.riemann.value(x, l, j, ss, k) +
             u3.value(x, i, j, l) * m.riemann.value(x, l, mm, ss, k);
      return s;
    };

    ScalarField rhs(grid, 0);
    double* rp = rhs.plane(0);
    const double* up_ups = ups.plane(0);
    for (std::size_t x = 0; x < npts; ++x) {
      double s = -2.0 * up_ups[x];
      for (int i = 0; i < n; ++i)
        for (int p = 0; p < n; ++p) {
          const double gip = m.g_inv.value(x, i, p);
          for (int j = 0; j < n; ++j)
            for (int q = 0; q < n; ++q) {
              const double gjq = m.g_inv.value(x, j, q);
              for (int k = 0; k < n; ++k)
                for (int r = 0; r < n; ++r) {
                  const double w = gip * gjq * m.g_inv.value(x, k, r);
                  const double upqr = u3.value(x, p, q, r);
                  double inner = 0.0;
                  for (int mm = 0; mm < n; ++mm)
                    for (int ss = 0; ss < n; ++ss) {
                      inner += ddetainv.value(x, mm, ss, j, k) * u3.value(x, mm, ss, i) +
                               detainv.value(x, mm, ss, j) * u4.value(x, mm, ss, i, k) +
                               detainv.value(x, mm, ss, k) * u4.value(x, mm, ss, i, j);
                      inner += ddetainv.value(x, mm, ss, j, k) * chihat2.value(x, mm, ss, i) +
                               detainv.value(x, mm, ss, j) * chihat3.value(x, mm, ss, i, k) +
                               detainv.value(x, mm, ss, k) * chihat3.value(x, mm, ss, i, j) +
                               ei.value(x, mm, ss) * chihat4.value(x, mm, ss, i, j, k);
                      if (opt.include_xi2)
                        inner += ei.value(x, mm, ss) * xi2_at(x, mm, ss, i, j, k);
                    }
                  s += 2.0 * w * inner * upqr;
                }
            }
        }
      rp[x] = s;
    }
    out.bigtheta = window_residual(fa, fc, lap, rhs, dt);
  }

  return out;
}

double harnack_functional(const CompanionState& cs, const TensorField& eta_inv,
                          const MetricField& m, double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw config_error("harnack alpha must lie in (1, 2)");
  const int n = m.grid.dim;
  const std::size_t npts = m.grid.size();

  const double* vp = cs.v.plane(0);
  ScalarField f(m.grid, 0);
  double* fp = f.plane(0);
  for (std::size_t p = 0; p < npts; ++p) {
    if (!(vp[p] > 0.0)) throw numeric_error("harnack functional needs strictly positive v");
    fp[p] = std::log(vp[p]);
  }
  const CovectorField fg = gradient(f);
  const ScalarField lap_v = laplacian_eta(cs.v, eta_inv, m);
  const double* lv = lap_v.plane(0);

  double worst = -HUGE_VAL;
  for (std::size_t p = 0; p < npts; ++p) {
    double grad2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) grad2 += eta_inv.value(p, i, j) * fg.value(p, i) * fg.value(p, j);
    const double F = cs.t * (grad2 - alpha * lv[p] / vp[p]);
    if (F > worst) worst = F;
  }
  return worst;
}

OscillationSeries oscillation_series(const std::vector<MonitorSample>& samples) {
  OscillationSeries out;
  out.t.reserve(samples.size());
  out.chi.reserve(samples.size());
  for (const auto& s : samples) {
    out.t.push_back(s.t);
    out.chi.push_back(s.theta_dot_sup - s.theta_dot_inf);
  }
  for (std::size_t k = 1; k < out.chi.size(); ++k)
    if (out.chi[k] > out.chi[k - 1] + 1e-10) out.monotone_ok = false;

  // chi at integer times, nearest sample, then consecutive ratios.
  if (!out.t.empty()) {
    std::vector<double> at_int;
    const int m0 = static_cast<int>(std::ceil(out.t.front()));
    const int m1 = static_cast<int>(std::floor(out.t.back()));
    std::size_t j = 0;
    for (int mm = m0; mm <= m1; ++mm) {
      while (j + 1 < out.t.size() &&
             std::fabs(out.t[j + 1] - mm) <= std::fabs(out.t[j] - mm))
        ++j;
      at_int.push_back(out.chi[j]);
    }
    for (std::size_t k = 1; k < at_int.size(); ++k)
      if (at_int[k - 1] > 0.0) out.unit_ratios.push_back(at_int[k] / at_int[k - 1]);
  }
  return out;
}

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& s, double t_a,
                   double t_b) {
  if (t.size() != s.size()) throw config_error("decay_fit: mismatched series lengths");
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < t_a || t[k] > t_b) continue;
    if (!(s[k] > 0.0)) throw config_error("decay_fit: non-positive entry in fit window");
    xs.push_back(t[k]);
    ys.push_back(std::log(s[k]));
  }
  if (xs.size() < 2) throw config_error("decay_fit: fewer than two samples in window");

  const double N = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
    syy += ys[k] * ys[k];
  }
  const double den = N * sxx - sx * sx;
  if (den == 0.0) throw config_error("decay_fit: degenerate window");
  const double slope = (N * sxy - sx * sy) / den;
  const double icept = (sy - slope * sx) / N;

  double ss_res = 0.0;
  const double ymean = sy / N;
  double ss_tot = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double e = ys[k] - (icept + slope * xs[k]);
    ss_res += e * e;
    const double d = ys[k] - ymean;
    ss_tot += d * d;
  }

  DecayFit fit;
  fit.c1 = std::exp(icept);
  fit.c2 = -slope;
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace glmcf
