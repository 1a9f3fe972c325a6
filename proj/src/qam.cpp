// SPDX-License-Identifier: Apache-2.0
#include "ofdmest/qam.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdmest {

namespace {

double gray_level(unsigned two_bits) {
  switch (two_bits) {
    case 0b00: return -3.0;
    case 0b01: return -1.0;
    case 0b11: return +1.0;
    default:   return +3.0;  // 0b10
  }
}

std::array<cxd, 16> make_grid() {
  std::array<cxd, 16> grid;
  const double scale = 1.0 / std::sqrt(10.0);
  for (unsigned label = 0; label < 16; ++label) {
    double i = gray_level((label >> 2) & 0b11);
    double q = gray_level(label & 0b11);
    grid[label] = cxd(i * scale, q * scale);
  }
  return grid;
}

}  // namespace

const std::array<cxd, 16>& qam16_grid() {
  static const std::array<cxd, 16> grid = make_grid();
  return grid;
}

ComplexVec qam16_map(const BitVec& bits) {
  if (bits.size() % 4 != 0) throw std::invalid_argument("qam16_map: bit count not a multiple of 4");
  const auto& grid = qam16_grid();
  ComplexVec out(bits.size() / 4);
  for (std::size_t s = 0; s < out.size(); ++s) {
    unsigned label = 0;
    for (std::size_t b = 0; b < 4; ++b) label = (label << 1) | (bits[4 * s + b] & 1u);
    out[s] = grid[label];
  }
  return out;
}

BitVec qam16_demap_hard(const ComplexVec& symbols) {
  const auto& grid = qam16_grid();
  BitVec out(symbols.size() * 4);
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    unsigned best = 0;
    double best_d = std::norm(symbols[s] - grid[0]);
    for (unsigned label = 1; label < 16; ++label) {
      double d = std::norm(symbols[s] - grid[label]);
      if (d < best_d) {  // strict: ties keep the smaller label
        best_d = d;
        best = label;
      }
    }
    for (std::size_t b = 0; b < 4; ++b) {
      out[4 * s + b] = static_cast<std::uint8_t>((best >> (3 - b)) & 1u);
    }
  }
  return out;
}

}  // namespace ofdmest
