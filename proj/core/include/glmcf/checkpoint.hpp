#pragma once

#include <string>

#include "glmcf/angle.hpp"
#include "glmcf/grid.hpp"

namespace glmcf {

// Binary checkpoint, little-endian:
//   magic "GLMCF01\n" | uint32 version | uint32 n | uint32 N | double t |
//   c (n doubles) | phi_hat (N^n doubles) | u (N^n doubles),
// grids row-major with axis 0 slowest. Round trips are bit-exact. The write
// goes to a temp file first and is renamed into place.
void save_checkpoint(const std::string& path, const GraphState& state, const PeriodicGrid& grid);

// Reads a checkpoint; grid_out receives the stored dimensions. u0_at_p is not
// part of the format and is left zero for the caller to restore.
GraphState load_checkpoint(const std::string& path, PeriodicGrid& grid_out);

}  // namespace glmcf
