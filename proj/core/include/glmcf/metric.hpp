#pragma once

#include <array>
#include <string>

#include "glmcf/tensor.hpp"
#include "glmcf/trig_poly.hpp"

namespace glmcf {

// Metric families on the flat torus. All three supply analytic first and
// second derivatives of g, so Christoffel symbols and curvature can be built
// without finite differencing the metric; `fd_derivatives` forces the stencil
// fallback (used to cross-check the analytic path).
struct MetricSpec {
  enum class Family { Flat, Conformal, Diagonal };

  Family family = Family::Flat;
  TrigPoly conformal_f;                 // g_ij = e^{2f} delta_ij
  std::array<TrigPoly, 3> diagonal_d;   // g_ii = d_i(q)
  bool fd_derivatives = false;

  static MetricSpec flat() { return {}; }
  static MetricSpec conformal(TrigPoly f);
  static MetricSpec diagonal(std::array<TrigPoly, 3> d);
};

struct MetricField {
  PeriodicGrid grid;
  TensorField g;           // rank 2, covariant
  TensorField g_inv;       // rank 2, contravariant
  TensorField g_isqrt;     // g^{-1/2}, symmetric
  ScalarField sqrt_det_g;
  TensorField christoffel;  // rank 3, comp [k][i][j] = Gamma^k_ij
  TensorField riemann;      // rank 4, comp [i][j][k][l] = R^i_jkl
  double sup_ginv_lambda_max = 0.0;

  int dim() const { return grid.dim; }
};

// Populates every derived tensor. Throws config_error naming the offending
// grid point if g fails to be positive definite anywhere.
MetricField build_metric(const MetricSpec& spec, const PeriodicGrid& grid);

}  // namespace glmcf
