#include "glmcf/linalg.hpp"

#include <cmath>
#include <cstring>

#include "glmcf/errors.hpp"

namespace glmcf {

namespace {

double offdiag_norm2(int n, const double* a) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
  return 2.0 * s;
}

}  // namespace

int sym_eigen(int n, const double* a_in, double* eval, double* evec, double tol,
              int max_sweeps) {
  double a[9];
  std::memcpy(a, a_in, sizeof(double) * n * n);
  double v[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};

  if (n == 1) {
    eval[0] = a[0];
    if (evec) evec[0] = 1.0;
    return 0;
  }

  double scale = 0.0;
  for (int i = 0; i < n * n; ++i) scale = std::max(scale, std::fabs(a[i]));
  const double thresh = tol * tol * std::max(scale * scale, 1e-300);

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm2(n, a) <= thresh) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = a[p * n + p], aqq = a[q * n + q];
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a[r * n + p], arq = a[r * n + q];
            a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
            a[r * n + q] = a[q * n + r] = arq + s * (arp - tau * arq);
          }
          const double vrp = v[r * 3 + p], vrq = v[r * 3 + q];
          v[r * 3 + p] = vrp - s * (vrq + tau * vrp);
          v[r * 3 + q] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (sweep == max_sweeps && offdiag_norm2(n, a) > thresh)
    throw numeric_error("sym_eigen: Jacobi sweeps did not converge");

  for (int i = 0; i < n; ++i) eval[i] = a[i * n + i];
  if (evec)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) evec[i * n + j] = v[i * 3 + j];
  return sweep;
}

double mat_det(int n, const double* a) {
  switch (n) {
    case 1:
      return a[0];
    case 2:
      return a[0] * a[3] - a[1] * a[2];
    default:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
  }
}

void mat_inverse(int n, const double* a, double* inv) {
  const double d = mat_det(n, a);
  if (d == 0.0 || !std::isfinite(d)) throw numeric_error("mat_inverse: singular matrix");
  const double r = 1.0 / d;
  switch (n) {
    case 1:
      inv[0] = r;
      return;
    case 2:
      inv[0] = a[3] * r;
      inv[1] = -a[1] * r;
      inv[2] = -a[2] * r;
      inv[3] = a[0] * r;
      return;
    default:
      inv[0] = (a[4] * a[8] - a[5] * a[7]) * r;
      inv[1] = (a[2] * a[7] - a[1] * a[8]) * r;
      inv[2] = (a[1] * a[5] - a[2] * a[4]) * r;
      inv[3] = (a[5] * a[6] - a[3] * a[8]) * r;
      inv[4] = (a[0] * a[8] - a[2] * a[6]) * r;
      inv[5] = (a[2] * a[3] - a[0] * a[5]) * r;
      inv[6] = (a[3] * a[7] - a[4] * a[6]) * r;
      inv[7] = (a[1] * a[6] - a[0] * a[7]) * r;
      inv[8] = (a[0] * a[4] - a[1] * a[3]) * r;
      return;
  }
}

void sym_isqrt(int n, const double* a, double* out) {
  double eval[3], evec[9];
  sym_eigen(n, a, eval, evec);
  for (int i = 0; i < n; ++i) {
    if (eval[i] <= 0.0) throw numeric_error("sym_isqrt: matrix not positive definite");
    eval[i] = 1.0 / std::sqrt(eval[i]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += evec[i * n + k] * eval[k] * evec[j * n + k];
      out[i * n + j] = s;
    }
}

double sym_lambda_max(int n, const double* a) {
  double eval[3];
  sym_eigen(n, a, eval, nullptr);
  double m = eval[0];
  for (int i = 1; i < n; ++i) m = std::max(m, eval[i]);
  return m;
}

double sym_lambda_min(int n, const double* a) {
  double eval[3];
  sym_eigen(n, a, eval, nullptr);
  double m = eval[0];
  for (int i = 1; i < n; ++i) m = std::min(m, eval[i]);
  return m;
}

std::complex<double> mat_det_complex(int n, const std::complex<double>* a) {
  switch (n) {
    case 1:
      return a[0];
    case 2:
      return a[0] * a[3] - a[1] * a[2];
    default:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
  }
}

}  // namespace glmcf
