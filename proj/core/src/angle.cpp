#include "glmcf/angle.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include "glmcf/errors.hpp"
#include "glmcf/linalg.hpp"
#include "glmcf/reduce.hpp"
#include "glmcf/stencil.hpp"

namespace glmcf {

CovectorField assemble_chi(const GraphState& state, const MetricField& m) {
  const PeriodicGrid& grid = m.grid;
  const int n = grid.dim;
  const std::size_t npts = grid.size();

  // Total potential phi_hat + u, differentiated once.
  ScalarField pot(grid, 0);
  {
    double* pp = pot.plane(0);
    const double* bp = state.base_potential.plane(0);
    const double* up = state.u.plane(0);
    for (std::size_t p = 0; p < npts; ++p) pp[p] = bp[p] + up[p];
  }
  CovectorField chi = gradient(pot);
  for (int a = 0; a < n; ++a) {
    double* cp = chi.plane(a);
    const double c = state.harmonic[a];
    for (std::size_t p = 0; p < npts; ++p) cp[p] += c;
  }
  return chi;
}

void induced_metric(const SymTensorField& chi_prime, const MetricField& m, SymTensorField& eta,
                    TensorField& eta_inv) {
  const PeriodicGrid& grid = m.grid;
  const int n = grid.dim;
  const std::size_t npts = grid.size();

  eta = SymTensorField(grid, 2);
  eta_inv = TensorField(grid, 2, 2);

  double cp[9], gi[9], e[9], ei[9];
  for (std::size_t p = 0; p < npts; ++p) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cp[i * n + j] = chi_prime.value(p, i, j);
        gi[i * n + j] = m.g_inv.value(p, i, j);
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = m.g.value(p, i, j);
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) s += cp[k * n + i] * gi[k * n + l] * cp[l * n + j];
        e[i * n + j] = s;
      }
    mat_inverse(n, e, ei);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        eta.at(p, i, j) = e[i * n + j];
        eta_inv.at(p, i, j) = ei[i * n + j];
      }
  }
}

void lagrangian_angle(const MetricField& m, AngleBundle& bundle) {
  const PeriodicGrid& grid = m.grid;
  const int n = grid.dim;
  const std::size_t npts = grid.size();

  bundle.theta = ScalarField(grid, 0);
  double worst_branch = 0.0;
  double lmax = 0.0;

  double cp[9], isq[9], a[9], tmp[9], ev[3];
  std::complex<double> cmat[9];

  for (std::size_t p = 0; p < npts; ++p) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cp[i * n + j] = bundle.chi_prime.value(p, i, j);
        isq[i * n + j] = m.g_isqrt.value(p, i, j);
      }
    // a = g^{-1/2} chi' g^{-1/2}, symmetric.
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

    try {
      sym_eigen(n, a, ev, nullptr);
    } catch (const numeric_error&) {
      const auto c = grid.coords(p);
      char buf[128];
      std::snprintf(buf, sizeof(buf), "Jacobi eigensolver failed at grid point (%d,%d,%d)", c[0],
                    c[1], c[2]);
      throw numeric_error(buf);
    }

    double th = 0.0;
    for (int i = 0; i < n; ++i) {
      th += std::atan(ev[i]);
      const double av = std::fabs(ev[i]);
      if (av > lmax) lmax = av;
    }
    bundle.theta.at(p) = th;

    // Cross-check against e^{i theta} = det(g + i chi') / (sqrt det g sqrt det eta).
    double gm[9], em[9];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        gm[i * n + j] = m.g.value(p, i, j);
        em[i * n + j] = bundle.eta.value(p, i, j);
        cmat[i * n + j] = {gm[i * n + j], cp[i * n + j]};
      }
    const std::complex<double> det = mat_det_complex(n, cmat);
    const double denom = std::sqrt(mat_det(n, gm)) * std::sqrt(mat_det(n, em));
    const std::complex<double> rhs = det / denom;
    const double r = std::abs(std::polar(1.0, th) - rhs);
    if (r > worst_branch) worst_branch = r;
  }

  bundle.branch_residual = worst_branch;
  bundle.lambda_max = lmax;
}

AngleBundle analyze_graph(const GraphState& state, const MetricField& m) {
  AngleBundle b;
  const CovectorField chi = assemble_chi(state, m);
  b.chi_prime = oneform_covariant_derivative(m, chi, nullptr, 0.0);
  induced_metric(b.chi_prime, m, b.eta, b.eta_inv);
  lagrangian_angle(m, b);
  return b;
}

double angle_gradient_residual(const AngleBundle& bundle, const MetricField& m) {
  const PeriodicGrid& grid = m.grid;
  const int n = grid.dim;
  const std::size_t npts = grid.size();

  const CovectorField dtheta = gradient(bundle.theta);
  const TensorField chi2 = cov_deriv(m, bundle.chi_prime);  // comp [p][q][k]

  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const double* dt = dtheta.plane(k);
    for (std::size_t x = 0; x < npts; ++x) {
      double s = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) s += bundle.eta_inv.value(x, p, q) * chi2.value(x, p, q, k);
      const double r = std::fabs(dt[x] - s);
      if (r > worst) worst = r;
    }
  }
  return worst;
}

double special_lagrangian_residual(const AngleBundle& bundle) {
  const std::span<const double> th(bundle.theta.plane(0), bundle.theta.points());
  return sup(th) - inf(th);
}

}  // namespace glmcf
