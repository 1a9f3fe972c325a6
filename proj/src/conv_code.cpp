// SPDX-License-Identifier: Apache-2.0
#include "ofdmest/conv_code.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace ofdmest {

namespace {

// State = (u_{t-1}, ..., u_{t-6}), bit i-1 holding u_{t-i}. The register
// seen by the generators is (u_t, state) with u_t in bit 0.
inline unsigned output_pair(unsigned state, unsigned bit) {
  unsigned reg = (state << 1) | bit;
  unsigned o1 = std::popcount(reg & kConvGenerator1) & 1u;
  unsigned o2 = std::popcount(reg & kConvGenerator2) & 1u;
  return (o1 << 1) | o2;
}

inline unsigned next_state(unsigned state, unsigned bit) {
  return ((state << 1) | bit) & (kConvStates - 1);
}

}  // namespace

BitVec conv_encode(const BitVec& message) {
  if (message.size() < kConvMemory) {
    throw std::invalid_argument("conv_encode: message shorter than tail");
  }
  for (std::size_t i = message.size() - kConvMemory; i < message.size(); ++i) {
    if (message[i] != 0) {
      throw std::invalid_argument("conv_encode: message must end in 6 zero tail bits");
    }
  }
  BitVec out;
  out.reserve(2 * message.size());
  unsigned state = 0;
  for (std::uint8_t b : message) {
    unsigned pair = output_pair(state, b & 1u);
    out.push_back(static_cast<std::uint8_t>((pair >> 1) & 1u));  // G1 first
    out.push_back(static_cast<std::uint8_t>(pair & 1u));         // then G2
    state = next_state(state, b & 1u);
  }
  return out;
}

BitVec viterbi_decode(const BitVec& coded) {
  if (coded.size() % 2 != 0) throw std::invalid_argument("viterbi_decode: odd input length");
  const std::size_t steps = coded.size() / 2;
  if (steps < kConvMemory) throw std::invalid_argument("viterbi_decode: block too short");

  constexpr unsigned kInf = std::numeric_limits<unsigned>::max() / 2;
  std::vector<unsigned> metric(kConvStates, kInf);
  std::vector<unsigned> next_metric(kConvStates, kInf);
  metric[0] = 0;
  // survivor[t][s] = predecessor state of the best path into s at step t.
  std::vector<std::uint8_t> survivor(steps * kConvStates);

  for (std::size_t t = 0; t < steps; ++t) {
    const unsigned received = (static_cast<unsigned>(coded[2 * t] & 1u) << 1) |
                              static_cast<unsigned>(coded[2 * t + 1] & 1u);
    std::fill(next_metric.begin(), next_metric.end(), kInf);
    std::uint8_t* surv = survivor.data() + t * kConvStates;
    for (unsigned s = 0; s < kConvStates; ++s) {
      const unsigned m = metric[s];
      if (m >= kInf) continue;
      for (unsigned bit = 0; bit < 2; ++bit) {
        const unsigned ns = next_state(s, bit);
        const unsigned branch = std::popcount(output_pair(s, bit) ^ received);
        const unsigned cand = m + branch;
        // Strict < keeps the first candidate on ties; predecessors are
        // visited in increasing state order, so ties resolve to the lower
        // state index.
        if (cand < next_metric[ns]) {
          next_metric[ns] = cand;
          surv[ns] = static_cast<std::uint8_t>(s);
        }
      }
    }
    metric.swap(next_metric);
  }

  BitVec message(steps);
  unsigned state = 0;  // terminated trellis ends in the all-zero state
  for (std::size_t t = steps; t-- > 0;) {
    message[t] = static_cast<std::uint8_t>(state & 1u);  // newest bit of the state
    state = survivor[t * kConvStates + state];
  }
  return message;
}

}  // namespace ofdmest
