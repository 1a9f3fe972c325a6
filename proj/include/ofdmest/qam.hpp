// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "ofdmest/conv_code.hpp"
#include "ofdmest/signal.hpp"

namespace ofdmest {

// Gray-labeled 16-QAM on the {-3,-1,+1,+3}/sqrt(10) grid, unit average power.
// A 4-bit label (b0 b1 b2 b3) maps I from (b0 b1) and Q from (b2 b3) with the
// per-axis Gray code 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3. Grid neighbors
// differ in exactly one bit.
const std::array<cxd, 16>& qam16_grid();

// Bit count must be a multiple of 4.
ComplexVec qam16_map(const BitVec& bits);

// Nearest-point hard decision; distance ties break toward the smallest label.
BitVec qam16_demap_hard(const ComplexVec& symbols);

}  // namespace ofdmest
