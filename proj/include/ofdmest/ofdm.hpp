// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ofdmest/linalg.hpp"
#include "ofdmest/rng.hpp"
#include "ofdmest/signal.hpp"

namespace ofdmest {

enum class PreambleConstellation { Bpsk, Qpsk };

// Frame geometry of a cyclic-prefix OFDM system.
struct OfdmConfig {
  std::size_t subcarriers = 64;  // K, power of two, >= 8
  std::size_t cp_length = 32;    // guard samples, < K
  PreambleConstellation preamble = PreambleConstellation::Qpsk;

  void validate() const;
};

// Preamble-derived observation of one channel realization:
//   y = cfr + w   (frequency domain, w ~ CN(0, sigma2 * I))
//   r = idft(y)   (time domain, same noise variance per sample)
struct ObservationPair {
  ComplexVec y;
  ComplexVec r;
  double sigma2 = 0.0;
};

// CFR of the zero-padded tap vector under the unitary DFT convention.
ComplexVec build_cfr(const ComplexVec& taps, std::size_t subcarriers);

// y = cfr + w with w i.i.d. CN(0, sigma2); r = idft(y).
ObservationPair observe_preamble(const ComplexVec& cfr, double sigma2, Rng& rng);

// K x (2L+1) matrix whose column for lag l in {-L..L} is the cyclic shift
// of y with row k equal to y_{(k+l) mod K}; the l = 0 column is y itself.
// Requires 0 <= L <= (K-1)/2 so no shifted column aliases the center one.
CMat build_shift_matrix(const ComplexVec& y, std::size_t half_window);

}  // namespace ofdmest
