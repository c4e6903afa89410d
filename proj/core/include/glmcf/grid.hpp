#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "glmcf/errors.hpp"

namespace glmcf {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform periodic grid on the torus (R/2piZ)^n, n in {1,2,3}.
// Storage is row-major with axis 0 slowest.
struct PeriodicGrid {
  int dim = 0;
  int points_per_axis = 0;
  double spacing = 0.0;  // h = 2pi/N

  PeriodicGrid() = default;

  PeriodicGrid(int n, int N) : dim(n), points_per_axis(N), spacing(kTwoPi / N) {
    if (n < 1 || n > 3) throw config_error("grid dimension must be 1, 2 or 3");
    if (N < 16) throw config_error("grid needs at least 16 points per axis");
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(points_per_axis);
    return s;
  }

  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int a = axis + 1; a < dim; ++a) s *= static_cast<std::size_t>(points_per_axis);
    return s;
  }

  int wrap(int i) const {
    const int N = points_per_axis;
    i %= N;
    return i < 0 ? i + N : i;
  }

  std::size_t index(const std::array<int, 3>& c) const {
    std::size_t p = 0;
    for (int a = 0; a < dim; ++a) p = p * points_per_axis + static_cast<std::size_t>(wrap(c[a]));
    return p;
  }

  std::array<int, 3> coords(std::size_t p) const {
    std::array<int, 3> c{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
      c[a] = static_cast<int>(p % points_per_axis);
      p /= points_per_axis;
    }
    return c;
  }

  // Coordinate value q^axis at grid line i.
  double coordinate(int i) const { return spacing * i; }

  std::array<double, 3> point(std::size_t p) const {
    const auto c = coords(p);
    return {spacing * c[0], spacing * c[1], spacing * c[2]};
  }

  bool operator==(const PeriodicGrid& o) const {
    return dim == o.dim && points_per_axis == o.points_per_axis;
  }
};

}  // namespace glmcf
