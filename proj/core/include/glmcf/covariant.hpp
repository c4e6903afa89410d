#pragma once

#include "glmcf/metric.hpp"
#include "glmcf/tensor.hpp"

namespace glmcf {

// Coordinate gradient of a scalar (rank-1 covariant field, du_i = partial_i u).
CovectorField gradient(const ScalarField& u);

// Covariant derivative of an arbitrary tensor field with respect to the
// metric connection. The new covariant index is appended last:
//   (cov_deriv T)_{...a} = partial_a T_{...}
//                          + Gamma^{i_s}_{p a} T^{..p..}   (contravariant slots)
//                          - Gamma^{p}_{j_s a} T_{..p..}   (covariant slots).
TensorField cov_deriv(const MetricField& m, const TensorField& T);

// Covariant Hessian of a scalar, u_{ij} = partial_i partial_j u - Gamma^k_ij u_k,
// built symmetric: the diagonal uses the second-derivative stencil and the
// off-diagonal composes two first-derivative sweeps once per unordered pair.
SymTensorField covariant_hessian(const MetricField& m, const ScalarField& u);

// Covariant derivative of a one-form, component [i][j] = chi_{i;j}. For closed
// chi this is symmetric; the result is symmetrized and the pre-symmetrization
// defect max_ij sup |chi_{i;j} - chi_{j;i}| is written to *defect if given.
// Throws numeric_error if the defect exceeds closed_tol (pass 0 to skip).
SymTensorField oneform_covariant_derivative(const MetricField& m, const CovectorField& chi,
                                            double* defect = nullptr,
                                            double closed_tol = 1e-6);

}  // namespace glmcf
