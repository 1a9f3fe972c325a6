// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "ofdmest/rng.hpp"
#include "ofdmest/signal.hpp"

namespace ofdmest {

struct ChannelTap {
  std::size_t delay = 0;  // samples
  double power = 1.0;     // linear average power, normalized so the sum is 1
};

// Tapped-delay-line power-delay profile. Loaded from plain-text files with
// one `delay_samples power_db` pair per line; powers are normalized to unit
// total energy on load. A `!deterministic` directive marks a non-fading
// profile whose taps are the fixed amplitudes sqrt(power), which is how the
// AWGN scenario (single unit tap) is expressed.
struct ChannelProfile {
  std::string name;
  std::vector<ChannelTap> taps;
  bool deterministic = false;

  std::size_t max_delay() const;
  void validate() const;

  static ChannelProfile from_taps(std::string name, std::vector<ChannelTap> taps,
                                  bool deterministic = false);
  static ChannelProfile load(const std::string& path);
};

// One channel realization: tap vector of length max_delay + 1 with zeros at
// non-profile delays.
struct CirRealization {
  ComplexVec taps;
};

// Independent Rayleigh fading per profile tap: g_p ~ CN(0, power_p).
// Deterministic profiles return sqrt(power_p) at each tap, no fading.
CirRealization draw_cir(const ChannelProfile& profile, Rng& rng);

// First row of the circulant CFR autocorrelation matrix for the unit-power
// per-carrier CFR convention used by the simulator:
//   c(l) = sum_p power_p * e^{+j 2 pi l delay_p / K},  c(0) = 1.
// Row l of the full matrix is c((l - k) mod K) conjugated as needed; entry
// (k, m) equals c(m - k) for m >= k.
ComplexVec cfr_autocorrelation(const ChannelProfile& profile, std::size_t subcarriers);

// (s (*) g)_n = sum_p g_p s_{(n-p) mod K}
ComplexVec circular_convolve(const ComplexVec& signal, const CirRealization& cir);

}  // namespace ofdmest
