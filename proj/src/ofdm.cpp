// SPDX-License-Identifier: Apache-2.0
#include "ofdmest/ofdm.hpp"

#include <stdexcept>

#include "ofdmest/dft.hpp"

namespace ofdmest {

void OfdmConfig::validate() const {
  if (subcarriers < 8 || (subcarriers & (subcarriers - 1)) != 0) {
    throw std::invalid_argument("OfdmConfig: subcarrier count must be a power of two >= 8");
  }
  if (cp_length >= subcarriers) {
    throw std::invalid_argument("OfdmConfig: CP length must be < subcarrier count");
  }
}

ComplexVec build_cfr(const ComplexVec& taps, std::size_t subcarriers) {
  if (taps.empty()) throw std::invalid_argument("build_cfr: empty tap vector");
  if (taps.size() > subcarriers) {
    throw std::invalid_argument("build_cfr: more taps than subcarriers");
  }
  ComplexVec padded(subcarriers, cxd(0.0, 0.0));
  std::copy(taps.begin(), taps.end(), padded.begin());
  return dft(padded);
}

ObservationPair observe_preamble(const ComplexVec& cfr, double sigma2, Rng& rng) {
  if (cfr.empty()) throw std::invalid_argument("observe_preamble: empty CFR");
  if (sigma2 < 0.0) throw std::invalid_argument("observe_preamble: negative noise variance");
  ObservationPair obs;
  obs.sigma2 = sigma2;
  obs.y.resize(cfr.size());
  for (std::size_t k = 0; k < cfr.size(); ++k) {
    obs.y[k] = cfr[k] + (sigma2 > 0.0 ? rng.complex_gaussian(sigma2) : cxd(0.0, 0.0));
  }
  obs.r = idft(obs.y);
  return obs;
}

CMat build_shift_matrix(const ComplexVec& y, std::size_t half_window) {
  const std::size_t k = y.size();
  if (k == 0) throw std::invalid_argument("build_shift_matrix: empty observation");
  if (2 * half_window + 1 > k || half_window > (k - 1) / 2) {
    throw std::invalid_argument("build_shift_matrix: half-window out of range");
  }
  const std::ptrdiff_t l = static_cast<std::ptrdiff_t>(half_window);
  CMat m(k, 2 * half_window + 1);
  for (std::ptrdiff_t lag = -l; lag <= l; ++lag) {
    const std::size_t c = static_cast<std::size_t>(lag + l);
    for (std::size_t row = 0; row < k; ++row) {
      std::size_t idx = (row + static_cast<std::size_t>(lag + static_cast<std::ptrdiff_t>(k))) % k;
      m.at(row, c) = y[idx];
    }
  }
  return m;
}

}  // namespace ofdmest
