// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace ofdmest {

using cxd = std::complex<double>;

// Length-K complex baseband sample vector. Used for CFR/CIR observations,
// OFDM symbols, and noise vectors alike.
using ComplexVec = std::vector<cxd>;

inline bool all_finite(const ComplexVec& v) {
  for (const cxd& x : v) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  }
  return true;
}

// ||v||^2
inline double energy(const ComplexVec& v) {
  double s = 0.0;
  for (const cxd& x : v) s += std::norm(x);
  return s;
}

// a^H b
inline cxd inner(const ComplexVec& a, const ComplexVec& b) {
  cxd s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline ComplexVec scaled(const ComplexVec& v, cxd factor) {
  ComplexVec out(v);
  for (cxd& x : out) x *= factor;
  return out;
}

// max_k |a_k - b_k| relative to max_k |b_k|
inline double max_rel_error(const ComplexVec& a, const ComplexVec& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace ofdmest
