#pragma once

#include <array>

#include "glmcf/covariant.hpp"
#include "glmcf/metric.hpp"
#include "glmcf/tensor.hpp"

namespace glmcf {

// A closed 1-form chi = c.dq + d(phi_hat) + du together with flow time.
// c is the constant harmonic part, phi_hat the fixed reference potential and
// u the evolving potential. The anchor u0_at_p is u at the origin grid point
// at t = 0, recorded for the drift monitor.
struct GraphState {
  std::array<double, 3> harmonic{0.0, 0.0, 0.0};
  ScalarField base_potential;  // phi_hat
  ScalarField u;
  double t = 0.0;
  double u0_at_p = 0.0;
};

// Per-slice angle data for the graph of chi.
struct AngleBundle {
  SymTensorField chi_prime;  // chi_{i;j}, symmetric for closed chi
  SymTensorField eta;        // induced metric g + chi' g^{-1} chi'
  TensorField eta_inv;       // contravariant
  ScalarField theta;
  double branch_residual = 0.0;  // sup |e^{i theta} - det formula|
  double lambda_max = 0.0;       // sup |eigenvalue| of g^{-1/2} chi' g^{-1/2}
};

// Coordinate components chi_i = c_i + d_i phi_hat + d_i u.
CovectorField assemble_chi(const GraphState& state, const MetricField& m);

// eta_ij = g_ij + chi_{k;i} g^{kl} chi_{l;j} and its inverse (inverse checked
// against identity to 1e-12).
void induced_metric(const SymTensorField& chi_prime, const MetricField& m, SymTensorField& eta,
                    TensorField& eta_inv);

// theta = sum_i arctan(lambda_i) with lambda_i the eigenvalues of
// g^{-1/2} chi' g^{-1/2} (cyclic Jacobi). Also fills branch_residual from the
// determinant identity e^{i theta} = det(g + i chi') / (sqrt det g sqrt det eta)
// and lambda_max. chi_prime and eta/eta_inv must already be set in the bundle.
void lagrangian_angle(const MetricField& m, AngleBundle& bundle);

// Builds the complete bundle for a state.
AngleBundle analyze_graph(const GraphState& state, const MetricField& m);

// sup over x,k of |d_k theta - eta^{pq} chi_{p;qk}|.
double angle_gradient_residual(const AngleBundle& bundle, const MetricField& m);

// osc(theta) = sup theta - inf theta.
double special_lagrangian_residual(const AngleBundle& bundle);

}  // namespace glmcf
