#include "glmcf/metric.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "glmcf/errors.hpp"
#include "glmcf/linalg.hpp"
#include "glmcf/stencil.hpp"

namespace glmcf {

MetricSpec MetricSpec::conformal(TrigPoly f) {
  MetricSpec s;
  s.family = Family::Conformal;
  s.conformal_f = std::move(f);
  return s;
}

MetricSpec MetricSpec::diagonal(std::array<TrigPoly, 3> d) {
  MetricSpec s;
  s.family = Family::Diagonal;
  s.diagonal_d = std::move(d);
  return s;
}

namespace {

struct AnalyticDerivs {
  // dg[m](i,j) and ddg[l][m](i,j) at a point, filled per family.
  std::function<void(const std::array<double, 3>&, int n, double* g, double* dg, double* ddg)>
      eval;
};

// Layout helpers for the local buffers: g is n*n, dg is n*(n*n) indexed
// [m][i*n+j], ddg is n*n*(n*n) indexed [l*n+m][i*n+j].
AnalyticDerivs make_evaluator(const MetricSpec& spec, int n) {
  using Q = std::array<double, 3>;
  switch (spec.family) {
    case MetricSpec::Family::Flat:
      return {[](const Q&, int nn, double* g, double* dg, double* ddg) {
        for (int i = 0; i < nn * nn; ++i) g[i] = (i % (nn + 1) == 0) ? 1.0 : 0.0;
        if (dg)
          for (int i = 0; i < nn * nn * nn; ++i) dg[i] = 0.0;
        if (ddg)
          for (int i = 0; i < nn * nn * nn * nn; ++i) ddg[i] = 0.0;
      }};
    case MetricSpec::Family::Conformal: {
      auto f = spec.conformal_f;
      std::array<TrigPoly, 3> df;
      std::array<std::array<TrigPoly, 3>, 3> ddf;
      for (int a = 0; a < n; ++a) {
        df[a] = f.derivative(a);
        for (int b = 0; b < n; ++b) ddf[a][b] = df[a].derivative(b);
      }
      return {[f, df, ddf](const Q& q, int nn, double* g, double* dg, double* ddg) {
        const double e2f = std::exp(2.0 * f.value(q));
        double fa[3] = {0, 0, 0}, fab[9];
        for (int a = 0; a < nn; ++a) fa[a] = df[a].value(q);
        for (int i = 0; i < nn * nn; ++i) g[i] = 0.0;
        for (int i = 0; i < nn; ++i) g[i * nn + i] = e2f;
        if (dg) {
          for (int i = 0; i < nn * nn * nn; ++i) dg[i] = 0.0;
          for (int m = 0; m < nn; ++m)
            for (int i = 0; i < nn; ++i) dg[m * nn * nn + i * nn + i] = 2.0 * fa[m] * e2f;
        }
        if (ddg) {
          for (int a = 0; a < nn; ++a)
            for (int b = 0; b < nn; ++b) fab[a * nn + b] = ddf[a][b].value(q);
          for (int i = 0; i < nn * nn * nn * nn; ++i) ddg[i] = 0.0;
          for (int l = 0; l < nn; ++l)
            for (int m = 0; m < nn; ++m) {
              const double c = (2.0 * fab[l * nn + m] + 4.0 * fa[l] * fa[m]) * e2f;
              for (int i = 0; i < nn; ++i) ddg[(l * nn + m) * nn * nn + i * nn + i] = c;
            }
        }
      }};
    }
    case MetricSpec::Family::Diagonal: {
      auto d = spec.diagonal_d;
      std::array<std::array<TrigPoly, 3>, 3> dd;
      std::array<std::array<std::array<TrigPoly, 3>, 3>, 3> ddd;
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) {
          dd[i][a] = d[i].derivative(a);
          for (int b = 0; b < n; ++b) ddd[i][a][b] = dd[i][a].derivative(b);
        }
      return {[d, dd, ddd](const Q& q, int nn, double* g, double* dg, double* ddg) {
        for (int i = 0; i < nn * nn; ++i) g[i] = 0.0;
        for (int i = 0; i < nn; ++i) g[i * nn + i] = d[i].value(q);
        if (dg) {
          for (int i = 0; i < nn * nn * nn; ++i) dg[i] = 0.0;
          for (int m = 0; m < nn; ++m)
            for (int i = 0; i < nn; ++i) dg[m * nn * nn + i * nn + i] = dd[i][m].value(q);
        }
        if (ddg) {
          for (int i = 0; i < nn * nn * nn * nn; ++i) ddg[i] = 0.0;
          for (int l = 0; l < nn; ++l)
            for (int m = 0; m < nn; ++m)
              for (int i = 0; i < nn; ++i)
                ddg[(l * nn + m) * nn * nn + i * nn + i] = ddd[i][l][m].value(q);
        }
      }};
    }
  }
  throw config_error("unknown metric family");
}

void christoffel_at(int n, const double* ginv, const double* dg, double* gamma) {
  // Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv[k * n + l] * (dg[i * n * n + j * n + l] + dg[j * n * n + i * n + l] -
                                  dg[l * n * n + i * n + j]);
        gamma[(k * n + i) * n + j] = 0.5 * s;
      }
}

}  // namespace

MetricField build_metric(const MetricSpec& spec, const PeriodicGrid& grid) {
  const int n = grid.dim;
  const std::size_t npts = grid.size();

  MetricField m;
  m.grid = grid;
  m.g = TensorField(grid, 2);
  m.g_inv = TensorField(grid, 2, 2);
  m.g_isqrt = TensorField(grid, 2);
  m.sqrt_det_g = ScalarField(grid, 0);
  m.christoffel = TensorField(grid, 3, 1);
  m.riemann = TensorField(grid, 4, 1);

  const auto ev = make_evaluator(spec, n);
  const bool analytic = !spec.fd_derivatives;

  // Point-local scratch.
  double gp[9], ginv[9], isq[9], dg[27], ddg[81], gamma[27], dgamma[81];

  // Pass 1: metric, inverse, density, Christoffel (analytic dg when allowed).
  TensorField dg_field;  // only for the stencil fallback
  if (!analytic) {
    for (std::size_t p = 0; p < npts; ++p) {
      ev.eval(grid.point(p), n, gp, nullptr, nullptr);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.g.at(p, i, j) = gp[i * n + j];
    }
    dg_field = TensorField(grid, 3);  // comp [m][i][j] = d_m g_ij
    for (int mm = 0; mm < n; ++mm)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          fd_axis(grid, m.g.plane(m.g.comp_index(i, j)),
                  dg_field.plane(dg_field.comp_index(mm, i, j)), mm, 1);
  }

  for (std::size_t p = 0; p < npts; ++p) {
    const auto q = grid.point(p);
    ev.eval(q, n, gp, analytic ? dg : nullptr, nullptr);
    if (!analytic)
      for (int mm = 0; mm < n; ++mm)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            dg[mm * n * n + i * n + j] = dg_field.value(p, mm, i, j);

    const double lmin = sym_lambda_min(n, gp);
    if (!(lmin > 0.0)) {
      const auto c = grid.coords(p);
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "metric not positive definite at grid point (%d,%d,%d): min eigenvalue %g",
                    c[0], c[1], c[2], lmin);
      throw config_error(buf);
    }

    mat_inverse(n, gp, ginv);
    sym_isqrt(n, gp, isq);
    christoffel_at(n, ginv, dg, gamma);

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m.g.at(p, i, j) = gp[i * n + j];
        m.g_inv.at(p, i, j) = ginv[i * n + j];
        m.g_isqrt.at(p, i, j) = isq[i * n + j];
      }
    m.sqrt_det_g.at(p) = std::sqrt(mat_det(n, gp));
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.christoffel.at(p, k, i, j) = gamma[(k * n + i) * n + j];

    const double lm = sym_lambda_max(n, ginv);
    if (lm > m.sup_ginv_lambda_max) m.sup_ginv_lambda_max = lm;
  }

  // Pass 2: curvature, R^i_jkl = d_k Gamma^i_jl - d_l Gamma^i_jk
  //                              + Gamma^i_pk Gamma^p_jl - Gamma^i_pl Gamma^p_jk.
  TensorField dgamma_field;
  if (!analytic) {
    dgamma_field = TensorField(grid, 4);  // comp [m][k][i][j] = d_m Gamma^k_ij
    for (int mm = 0; mm < n; ++mm)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            fd_axis(grid, m.christoffel.plane(m.christoffel.comp_index(k, i, j)),
                    dgamma_field.plane(dgamma_field.comp_index(mm, k, i, j)), mm, 1);
  }

  for (std::size_t p = 0; p < npts; ++p) {
    if (analytic) {
      ev.eval(grid.point(p), n, gp, dg, ddg);
      mat_inverse(n, gp, ginv);
      christoffel_at(n, ginv, dg, gamma);
      // d_m Gamma^k_ij = 1/2 d_m g^{kl} (...) + 1/2 g^{kl} d_m(...),
      // with d_m g^{kl} = -g^{ka} d_m g_ab g^{bl}.
      for (int mm = 0; mm < n; ++mm)
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              double s = 0.0;
              for (int l = 0; l < n; ++l) {
                double dginv_kl = 0.0;
                for (int a = 0; a < n; ++a)
                  for (int b = 0; b < n; ++b)
                    dginv_kl -= ginv[k * n + a] * dg[mm * n * n + a * n + b] * ginv[b * n + l];
                const double sym1 = dg[i * n * n + j * n + l] + dg[j * n * n + i * n + l] -
                                    dg[l * n * n + i * n + j];
                const double sym2 = ddg[(mm * n + i) * n * n + j * n + l] +
                                    ddg[(mm * n + j) * n * n + i * n + l] -
                                    ddg[(mm * n + l) * n * n + i * n + j];
                s += dginv_kl * sym1 + ginv[k * n + l] * sym2;
              }
              dgamma[((mm * n + k) * n + i) * n + j] = 0.5 * s;
            }
    } else {
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            gamma[(k * n + i) * n + j] = m.christoffel.value(p, k, i, j);
            for (int mm = 0; mm < n; ++mm)
              dgamma[((mm * n + k) * n + i) * n + j] = dgamma_field.value(p, mm, k, i, j);
          }
    }

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double r = dgamma[((k * n + i) * n + j) * n + l] -
                       dgamma[((l * n + i) * n + j) * n + k];
            for (int pp = 0; pp < n; ++pp)
              r += gamma[(i * n + pp) * n + k] * gamma[(pp * n + j) * n + l] -
                   gamma[(i * n + pp) * n + l] * gamma[(pp * n + j) * n + k];
            m.riemann.at(p, i, j, k, l) = r;
          }
  }

  return m;
}

}  // namespace glmcf
