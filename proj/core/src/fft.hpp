#pragma once

#include <vector>

#include "strichartz/grid.hpp"

namespace strichartz::detail {

/// Unnormalised in-place DFT over the grid shape; sign -1 forward, +1 backward.
void fft_inplace(std::vector<cplx>& data, const Grid& grid, int sign);

/// Centred frequency samples -> natural DFT order with the (-1)^k factors,
/// i.e. the input expected by a backward DFT producing samples at x_j.
void centred_to_dft(const std::vector<cplx>& centred, std::vector<cplx>& dft, const Grid& grid);
/// Natural DFT order -> centred order with (-1)^k factors.
void dft_to_centred(const std::vector<cplx>& dft, std::vector<cplx>& centred, const Grid& grid);

}  // namespace strichartz::detail
