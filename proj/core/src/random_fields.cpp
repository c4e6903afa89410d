#include "glmcf/random_fields.hpp"

#include <cmath>

#include "glmcf/errors.hpp"
#include "glmcf/grid.hpp"

namespace glmcf {

TrigPoly random_band_limited(std::mt19937_64& rng, int dim, int max_wave, double amplitude,
                             int terms) {
  if (dim < 1 || dim > 3) throw config_error("random field dimension must be 1, 2 or 3");
  if (max_wave < 1 || terms < 1) throw config_error("random field needs max_wave, terms >= 1");

  std::uniform_int_distribution<int> wave(-max_wave, max_wave);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);

  std::vector<TrigTerm> ts;
  ts.reserve(static_cast<std::size_t>(terms));
  const double per_term = amplitude / terms;
  for (int k = 0; k < terms; ++k) {
    TrigTerm t;
    do {
      for (int a = 0; a < dim; ++a) t.wave[a] = wave(rng);
    } while (t.wave[0] == 0 && t.wave[1] == 0 && t.wave[2] == 0);
    t.amp = per_term * unit(rng);
    t.phase = angle(rng);
    ts.push_back(t);
  }
  return TrigPoly(std::move(ts));
}

}  // namespace glmcf
