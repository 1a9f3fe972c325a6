// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "ofdmest/signal.hpp"

namespace ofdmest {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Small counter-based generator (splitmix64 core) with Box-Muller normals.
// Every Monte Carlo draw in the project goes through this class so that a
// (seed, key...) pair reproduces bit-identical streams on any platform and
// under any threading layout.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return detail::splitmix64(state_); }

  // uniform on (0, 1)
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // standard normal, Box-Muller pair cached
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(6.283185307179586476925287 * u2);
    has_spare_ = true;
    return mag * std::cos(6.283185307179586476925287 * u2);
  }

  // circularly symmetric complex gaussian with E|z|^2 = variance
  cxd complex_gaussian(double variance) {
    double s = std::sqrt(variance * 0.5);
    double re = gaussian();
    double im = gaussian();
    return {s * re, s * im};
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Derives an independent stream seed from a base seed and a key tuple
// (scenario hash, K, snr index, trial index, ...).
inline std::uint64_t derive_stream(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = seed ^ 0x6a09e667f3bcc909ULL;
  for (std::uint64_t k : keys) {
    s ^= k + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    std::uint64_t tmp = s;
    s = detail::splitmix64(tmp);
  }
  return s;
}

inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ofdmest
