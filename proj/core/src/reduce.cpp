#include "glmcf/reduce.hpp"

#include <cmath>
#include <limits>

namespace glmcf {

double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double sup(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v)
    if (x > m) m = x;
  return m;
}

double inf(std::span<const double> v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v)
    if (x < m) m = x;
  return m;
}

double sup_abs(const TensorField& t) {
  double m = 0.0;
  for (double x : t.raw()) {
    const double a = std::fabs(x);
    if (a > m) m = a;
  }
  return m;
}

bool all_finite(const TensorField& t) {
  for (double x : t.raw())
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace glmcf
