// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ofdmest/signal.hpp"

namespace ofdmest {

// Unitary DFT, forward kernel e^{-j2*pi*k*n/K} with 1/sqrt(K) scaling both
// ways, so transforms preserve the 2-norm and noise variance is the same in
// the time and frequency domains. Radix-2 FFT for power-of-two lengths,
// direct summation otherwise.
ComplexVec dft(const ComplexVec& v);

// Adjoint of dft; idft(dft(v)) == v.
ComplexVec idft(const ComplexVec& v);

}  // namespace ofdmest
