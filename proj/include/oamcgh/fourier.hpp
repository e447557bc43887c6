#pragma once

#include <span>

#include "oamcgh/grid.hpp"

namespace oamcgh {

enum class FftDirection { forward, inverse };

// Centered 2-D DFT with 1/sqrt(rows*cols) normalization: sample (rows/2,
// cols/2) is the origin in both planes. Forward uses exp(-i 2 pi k n / N).
// Plans are created under a global lock, so concurrent calls are safe.
void centered_dft(std::span<cplx> data, int rows, int cols, FftDirection direction);

}  // namespace oamcgh
