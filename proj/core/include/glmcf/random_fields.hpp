#pragma once

#include <cstdint>
#include <random>

#include "glmcf/trig_poly.hpp"

namespace glmcf {

// Band-limited random trig polynomial: `terms` waves with integer wave
// vectors bounded by max_wave (not all zero), phases uniform on [0, 2pi) and
// amplitudes scaled so the sup of the result is at most `amplitude`.
TrigPoly random_band_limited(std::mt19937_64& rng, int dim, int max_wave, double amplitude,
                             int terms);

}  // namespace glmcf
