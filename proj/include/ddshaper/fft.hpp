#pragma once

#include <vector>

#include "ddshaper/types.hpp"

namespace ddshaper {

// Unnormalized DFT, X[r] = sum_i x[i] e^{-j2pi r i / L} (sign = -1), or the
// inverse kernel without the 1/L (sign = +1).
std::vector<cplx> dft(const std::vector<cplx>& x, int sign);

}  // namespace ddshaper
