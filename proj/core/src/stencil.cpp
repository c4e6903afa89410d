#include "glmcf/stencil.hpp"

#include "glmcf/errors.hpp"

namespace glmcf {

void fd_axis(const PeriodicGrid& grid, const double* in, double* out, int axis, int order) {
  if (axis < 0 || axis >= grid.dim) throw config_error("fd_axis: axis out of range");
  if (order != 1 && order != 2) throw config_error("fd_axis: order must be 1 or 2");

  const int N = grid.points_per_axis;
  const std::size_t npts = grid.size();
  const std::size_t stride = grid.stride(axis);
  const double h = grid.spacing;
  const double s1 = 1.0 / (12.0 * h);
  const double s2 = 1.0 / (12.0 * h * h);

  // Iterate lines along `axis`. A line starts at base and steps by `stride`;
  // bases enumerate all points whose coordinate along `axis` is zero.
  const std::size_t block = stride * static_cast<std::size_t>(N);
  for (std::size_t outer = 0; outer < npts; outer += block) {
    for (std::size_t innerbase = 0; innerbase < stride; ++innerbase) {
      const std::size_t base = outer + innerbase;
      for (int i = 0; i < N; ++i) {
        const int im2 = (i - 2 + N) % N, im1 = (i - 1 + N) % N;
        const int ip1 = (i + 1) % N, ip2 = (i + 2) % N;
        const double fm2 = in[base + stride * im2];
        const double fm1 = in[base + stride * im1];
        const double f0 = in[base + stride * i];
        const double fp1 = in[base + stride * ip1];
        const double fp2 = in[base + stride * ip2];
        out[base + stride * i] =
            (order == 1) ? (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) * s1
                         : (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) * s2;
      }
    }
  }
}

TensorField fd_partial(const TensorField& field, int axis, int order) {
  TensorField out(field.grid(), field.rank(), field.up_rank());
  for (std::size_t c = 0; c < field.comps(); ++c)
    fd_axis(field.grid(), field.plane(c), out.plane(c), axis, order);
  return out;
}

}  // namespace glmcf
