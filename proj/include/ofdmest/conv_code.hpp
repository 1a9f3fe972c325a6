// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace ofdmest {

using BitVec = std::vector<std::uint8_t>;

// Rate-1/2 constraint-length-7 convolutional code with generators
//   G1 = 1 + D^3 + D^4 + D^5 + D^6   (coefficients 1001111, D^0 first)
//   G2 = 1 + D^3 + D^4 + D^6         (coefficients 1001101, D^0 first)
// Messages must end in 6 zero tail bits so the trellis flushes to state 0.
constexpr unsigned kConvGenerator1 = 0b1111001;  // bit i = coefficient of D^i
constexpr unsigned kConvGenerator2 = 0b1011001;
constexpr unsigned kConvMemory = 6;
constexpr unsigned kConvStates = 64;

// Emits the (G1, G2) output pair per input bit; output length is twice the
// input length.
BitVec conv_encode(const BitVec& message);

// Hard-decision minimum-Hamming-distance decode over the 64-state trellis,
// assuming a terminated (state-0) path. Metric ties break toward the lower
// state index.
BitVec viterbi_decode(const BitVec& coded);

}  // namespace ofdmest
