#pragma once

#include <string>

#include "sgd/density.hpp"

namespace sgd::io {

std::string cut_name(SliceCut cut);
std::string mode_name(EvalMode mode);

// Columns `x, re, im` (slices) or `x, x_prime, re, im` (grids); `#` header
// lines record the cut, time (in 1/Omega and seconds) and units.
void write_slice_csv(const DensitySlice& slice, const std::string& path);
void write_grid_csv(const DensityGrid& grid, const std::string& path);

} // namespace sgd::io
