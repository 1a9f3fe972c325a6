// SPDX-License-Identifier: Apache-2.0
#include "ofdmest/dft.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdmest {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey, sign = -1 for the forward kernel.
void fft_pow2(ComplexVec& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    const cxd wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cxd w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        cxd u = a[i + j];
        cxd v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

ComplexVec direct_dft(const ComplexVec& v, int sign) {
  const std::size_t n = v.size();
  ComplexVec out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cxd acc(0.0, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      double ang = sign * kTwoPi * static_cast<double>(k) * static_cast<double>(m) /
                   static_cast<double>(n);
      acc += v[m] * cxd(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

ComplexVec transform(const ComplexVec& v, int sign) {
  if (v.empty()) throw std::invalid_argument("dft: empty input");
  ComplexVec out;
  if (is_pow2(v.size())) {
    out = v;
    fft_pow2(out, sign);
  } else {
    out = direct_dft(v, sign);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (cxd& x : out) x *= scale;
  return out;
}

}  // namespace

ComplexVec dft(const ComplexVec& v) { return transform(v, -1); }

ComplexVec idft(const ComplexVec& v) { return transform(v, +1); }

}  // namespace ofdmest
