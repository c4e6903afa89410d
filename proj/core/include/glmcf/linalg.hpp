#pragma once

#include <complex>
#include <cstddef>

namespace glmcf {

// Dense row-major n x n matrices with n <= 3, kept as double[9] on the stack.

// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Writes eigenvalues
// (unordered) into eval[0..n) and, if evec != nullptr, the corresponding
// orthonormal eigenvectors into the columns of evec. Returns the number of
// sweeps used; throws numeric_error if the off-diagonal norm has not dropped
// below tol after max_sweeps.
int sym_eigen(int n, const double* a, double* eval, double* evec, double tol = 1e-14,
              int max_sweeps = 50);

double mat_det(int n, const double* a);
void mat_inverse(int n, const double* a, double* inv);  // throws numeric_error on singular

// Inverse square root of a symmetric positive definite matrix, via Jacobi.
void sym_isqrt(int n, const double* a, double* out);

double sym_lambda_max(int n, const double* a);  // largest eigenvalue
double sym_lambda_min(int n, const double* a);

std::complex<double> mat_det_complex(int n, const std::complex<double>* a);

}  // namespace glmcf
