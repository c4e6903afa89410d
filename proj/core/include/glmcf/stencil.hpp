#pragma once

#include "glmcf/tensor.hpp"

namespace glmcf {

// 4th-order centered 5-point stencil along one axis with periodic wrap.
// order 1: first partial, order 2: second partial.
void fd_axis(const PeriodicGrid& grid, const double* in, double* out, int axis, int order);

// Partial derivative of every component of a field. The tensor character of
// the result is the caller's business (this is a plain coordinate partial).
TensorField fd_partial(const TensorField& field, int axis, int order = 1);

}  // namespace glmcf
