#pragma once

#include <array>
#include <string>
#include <vector>

#include "glmcf/tensor.hpp"

namespace glmcf {

// Band-limited trigonometric polynomial on the torus:
//   f(q) = sum_t amp_t * sin(k_t . q + phase_t),
// closed under partial differentiation to every order. The config syntax
// accepts terms "amp fn k1 [k2 [k3]] [phase]" with fn in {sin, cos, const},
// separated by ';'.
struct TrigTerm {
  double amp = 0.0;
  std::array<int, 3> wave{0, 0, 0};
  double phase = 0.0;
};

class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(std::vector<TrigTerm> terms) : terms_(std::move(terms)) {}

  static TrigPoly constant(double c);
  // Parses the config syntax; dim bounds how many wave numbers a term takes.
  static TrigPoly parse(const std::string& text, int dim);

  bool empty() const { return terms_.empty(); }
  const std::vector<TrigTerm>& terms() const { return terms_; }

  double value(const std::array<double, 3>& q) const;
  TrigPoly derivative(int axis) const;

  TrigPoly& operator+=(const TrigPoly& o);

  // Samples onto a grid as a rank-0 field.
  ScalarField sample(const PeriodicGrid& grid) const;

  // Emits parseable term syntax with `dim` wave numbers per term.
  std::string to_string(int dim = 3) const;

 private:
  std::vector<TrigTerm> terms_;
};

}  // namespace glmcf
