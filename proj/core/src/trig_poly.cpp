#include "glmcf/trig_poly.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "glmcf/errors.hpp"

namespace glmcf {

namespace {
constexpr double kHalfPi = 1.5707963267948966192313216916398;
}

TrigPoly TrigPoly::constant(double c) {
  if (c == 0.0) return TrigPoly{};
  return TrigPoly({TrigTerm{c, {0, 0, 0}, kHalfPi}});
}

TrigPoly TrigPoly::parse(const std::string& text, int dim) {
  std::vector<TrigTerm> terms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::stringstream ts(item);
    std::string fn;
    double amp;
    if (!(ts >> amp)) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      throw config_error("trig polynomial term needs a leading amplitude: '" + item + "'");
    }
    if (!(ts >> fn)) throw config_error("trig polynomial term needs sin/cos/const: '" + item + "'");
    TrigTerm t;
    t.amp = amp;
    if (fn == "const") {
      t.phase = kHalfPi;
    } else if (fn == "sin" || fn == "cos") {
      for (int a = 0; a < dim; ++a)
        if (!(ts >> t.wave[a]))
          throw config_error("trig polynomial term needs " + std::to_string(dim) +
                             " wave numbers: '" + item + "'");
      double phase = 0.0;
      if (ts >> phase) t.phase = phase;
      if (fn == "cos") t.phase += kHalfPi;
    } else {
      throw config_error("unknown trig function '" + fn + "'");
    }
    std::string extra;
    if (ts >> extra)
      throw config_error("trig polynomial term has trailing tokens: '" + item + "'");
    terms.push_back(t);
  }
  return TrigPoly(std::move(terms));
}

double TrigPoly::value(const std::array<double, 3>& q) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    const double arg = t.wave[0] * q[0] + t.wave[1] * q[1] + t.wave[2] * q[2] + t.phase;
    s += t.amp * std::sin(arg);
  }
  return s;
}

TrigPoly TrigPoly::derivative(int axis) const {
  std::vector<TrigTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.wave[axis] == 0) continue;
    TrigTerm d = t;
    d.amp = t.amp * t.wave[axis];
    d.phase = t.phase + kHalfPi;
    out.push_back(d);
  }
  return TrigPoly(std::move(out));
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

ScalarField TrigPoly::sample(const PeriodicGrid& grid) const {
  ScalarField f(grid, 0);
  double* out = f.plane(0);
  const std::size_t npts = grid.size();
  for (std::size_t p = 0; p < npts; ++p) out[p] = value(grid.point(p));
  return f;
}

std::string TrigPoly::to_string(int dim) const {
  std::string s;
  char buf[128];
  for (const auto& t : terms_) {
    if (!s.empty()) s += "; ";
    std::snprintf(buf, sizeof(buf), "%.17g sin", t.amp);
    s += buf;
    for (int a = 0; a < dim; ++a) {
      std::snprintf(buf, sizeof(buf), " %d", t.wave[a]);
      s += buf;
    }
    std::snprintf(buf, sizeof(buf), " %.17g", t.phase);
    s += buf;
  }
  return s;
}

}  // namespace glmcf
