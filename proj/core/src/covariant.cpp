#include "glmcf/covariant.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <vector>

#include "glmcf/errors.hpp"
#include "glmcf/stencil.hpp"

namespace glmcf {

CovectorField gradient(const ScalarField& u) {
  const PeriodicGrid& grid = u.grid();
  CovectorField out(grid, 1);
  for (int a = 0; a < grid.dim; ++a) fd_axis(grid, u.plane(0), out.plane(a), a, 1);
  return out;
}

TensorField cov_deriv(const MetricField& m, const TensorField& T) {
  const PeriodicGrid& grid = T.grid();
  const int n = grid.dim;
  const int r = T.rank();
  const std::size_t npts = grid.size();

  TensorField out(grid, r + 1, T.up_rank());

  // Coordinate partials first; each output plane starts as partial_a T_c.
  for (std::size_t c = 0; c < T.comps(); ++c)
    for (int a = 0; a < n; ++a) fd_axis(grid, T.plane(c), out.plane(c * n + a), a, 1);

  if (r == 0) return out;

  // Connection corrections, one output component at a time.
  std::array<int, 5> idx{};
  for (std::size_t c = 0; c < T.comps(); ++c) {
    std::size_t rem = c;
    for (int s = r - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(rem % n);
      rem /= n;
    }
    for (int a = 0; a < n; ++a) {
      double* op = out.plane(c * n + a);
      for (int s = 0; s < r; ++s) {
        const bool up = s < T.up_rank();
        for (int pp = 0; pp < n; ++pp) {
          // Swap slot s to the dummy index pp.
          std::size_t c2 = 0;
          for (int t = 0; t < r; ++t) c2 = c2 * n + static_cast<std::size_t>(t == s ? pp : idx[t]);
          const double* tp = T.plane(c2);
          const std::size_t gkij =
              up ? m.christoffel.comp_index(idx[s], pp, a) : m.christoffel.comp_index(pp, idx[s], a);
          const double* gp = m.christoffel.plane(gkij);
          const double sign = up ? 1.0 : -1.0;
          for (std::size_t p = 0; p < npts; ++p) op[p] += sign * gp[p] * tp[p];
        }
      }
    }
  }
  return out;
}

SymTensorField covariant_hessian(const MetricField& m, const ScalarField& u) {
  // Same stencils as the one-form path, so covariant_hessian(u) and the
  // covariant derivative of du agree to rounding, not just truncation.
  return oneform_covariant_derivative(m, gradient(u), nullptr, 0.0);
}

SymTensorField oneform_covariant_derivative(const MetricField& m, const CovectorField& chi,
                                            double* defect, double closed_tol) {
  const TensorField full = cov_deriv(m, chi);  // comp [i][a] = chi_{i;a}
  const PeriodicGrid& grid = chi.grid();
  const int n = grid.dim;
  const std::size_t npts = grid.size();

  double worst = 0.0;
  SymTensorField out(grid, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double* ij = full.plane(full.comp_index(i, j));
      const double* ji = full.plane(full.comp_index(j, i));
      double* op = out.plane(out.comp_index(i, j));
      for (std::size_t p = 0; p < npts; ++p) {
        const double d = std::fabs(ij[p] - ji[p]);
        if (d > worst) worst = d;
        op[p] = 0.5 * (ij[p] + ji[p]);
      }
      if (j != i) {
        double* tp = out.plane(out.comp_index(j, i));
        for (std::size_t p = 0; p < npts; ++p) tp[p] = op[p];
      }
    }

  if (defect) *defect = worst;
  if (closed_tol > 0.0 && worst > closed_tol) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "one-form is not closed: covariant derivative asymmetry %.3e exceeds %.3e",
                  worst, closed_tol);
    throw numeric_error(buf);
  }
  return out;
}

}  // namespace glmcf
