#pragma once

#include <cstddef>
#include <span>

#include "glmcf/tensor.hpp"

namespace glmcf {

// Fixed-order pairwise summation; the result does not depend on how work
// would be split across workers, so reruns are bit-stable.
double pairwise_sum(std::span<const double> v);

double sup(std::span<const double> v);
double inf(std::span<const double> v);

// Supremum of |T| over all points and components.
double sup_abs(const TensorField& t);

bool all_finite(const TensorField& t);

}  // namespace glmcf
