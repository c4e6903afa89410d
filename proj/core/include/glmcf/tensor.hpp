#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "glmcf/grid.hpp"

namespace glmcf {

// Grid field of tensors with dim^rank components per point. The first
// `up_rank` index slots are contravariant, the remaining slots covariant;
// covariant differentiation appends its index last. Components are stored
// plane-major: one contiguous grid-sized plane per tensor component, which
// keeps finite-difference sweeps linear in memory.
class TensorField {
 public:
  TensorField() = default;

  TensorField(const PeriodicGrid& grid, int rank, int up_rank = 0)
      : grid_(grid), rank_(rank), up_(up_rank), npts_(grid.size()) {
    assert(rank >= 0 && rank <= 5 && up_rank >= 0 && up_rank <= rank);
    comps_ = 1;
    for (int r = 0; r < rank; ++r) comps_ *= static_cast<std::size_t>(grid.dim);
    data_.assign(comps_ * npts_, 0.0);
  }

  const PeriodicGrid& grid() const { return grid_; }
  int rank() const { return rank_; }
  int up_rank() const { return up_; }
  std::size_t comps() const { return comps_; }
  std::size_t points() const { return npts_; }

  double* plane(std::size_t comp) { return data_.data() + comp * npts_; }
  const double* plane(std::size_t comp) const { return data_.data() + comp * npts_; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  template <class... Ix>
  std::size_t comp_index(Ix... ix) const {
    static_assert(sizeof...(Ix) <= 5);
    assert(static_cast<int>(sizeof...(Ix)) == rank_);
    std::size_t c = 0;
    ((c = c * grid_.dim + static_cast<std::size_t>(ix)), ...);
    return c;
  }

  template <class... Ix>
  double& at(std::size_t p, Ix... ix) {
    return data_[comp_index(ix...) * npts_ + p];
  }

  template <class... Ix>
  double value(std::size_t p, Ix... ix) const {
    return data_[comp_index(ix...) * npts_ + p];
  }

  TensorField& operator+=(const TensorField& o) {
    assert(comps_ == o.comps_ && npts_ == o.npts_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  TensorField& operator-=(const TensorField& o) {
    assert(comps_ == o.comps_ && npts_ == o.npts_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  TensorField& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

 private:
  PeriodicGrid grid_;
  int rank_ = 0;
  int up_ = 0;
  std::size_t comps_ = 0;
  std::size_t npts_ = 0;
  std::vector<double> data_;
};

// Spec-facing aliases; ranks are checked at use sites.
using ScalarField = TensorField;     // rank 0
using CovectorField = TensorField;   // rank 1
using SymTensorField = TensorField;  // rank 2, symmetric
using ThirdTensorField = TensorField;

}  // namespace glmcf
