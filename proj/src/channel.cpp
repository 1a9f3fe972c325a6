// SPDX-License-Identifier: Apache-2.0
#include "ofdmest/channel.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ofdmest {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

std::size_t ChannelProfile::max_delay() const {
  std::size_t d = 0;
  for (const ChannelTap& t : taps) d = std::max(d, t.delay);
  return d;
}

void ChannelProfile::validate() const {
  if (taps.empty()) throw std::invalid_argument("ChannelProfile: no taps");
  double total = 0.0;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (taps[i].power <= 0.0) throw std::invalid_argument("ChannelProfile: tap power must be > 0");
    if (i > 0 && taps[i].delay <= taps[i - 1].delay) {
      throw std::invalid_argument("ChannelProfile: delays must be strictly increasing");
    }
    total += taps[i].power;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("ChannelProfile: powers not normalized");
  }
}

ChannelProfile ChannelProfile::from_taps(std::string name, std::vector<ChannelTap> taps,
                                         bool deterministic) {
  ChannelProfile p;
  p.name = std::move(name);
  p.taps = std::move(taps);
  p.deterministic = deterministic;
  std::sort(p.taps.begin(), p.taps.end(),
            [](const ChannelTap& a, const ChannelTap& b) { return a.delay < b.delay; });
  double total = 0.0;
  for (const ChannelTap& t : p.taps) total += t.power;
  if (total <= 0.0) throw std::invalid_argument("ChannelProfile: nonpositive total power");
  for (ChannelTap& t : p.taps) t.power /= total;
  p.validate();
  return p;
}

ChannelProfile ChannelProfile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ChannelProfile: cannot open " + path);
  std::vector<ChannelTap> taps;
  bool deterministic = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "!deterministic") {
      deterministic = true;
      continue;
    }
    ChannelTap tap;
    double power_db = 0.0;
    std::istringstream fs(first);
    if (!(fs >> tap.delay)) {
      throw std::runtime_error("ChannelProfile: bad delay in " + path + " line " +
                               std::to_string(lineno));
    }
    if (!(ls >> power_db)) {
      throw std::runtime_error("ChannelProfile: bad power in " + path + " line " +
                               std::to_string(lineno));
    }
    tap.power = std::pow(10.0, power_db / 10.0);
    taps.push_back(tap);
  }
  std::string name = std::filesystem::path(path).stem().string();
  return from_taps(std::move(name), std::move(taps), deterministic);
}

CirRealization draw_cir(const ChannelProfile& profile, Rng& rng) {
  profile.validate();
  CirRealization cir;
  cir.taps.assign(profile.max_delay() + 1, cxd(0.0, 0.0));
  for (const ChannelTap& t : profile.taps) {
    cir.taps[t.delay] =
        profile.deterministic ? cxd(std::sqrt(t.power), 0.0) : rng.complex_gaussian(t.power);
  }
  return cir;
}

ComplexVec cfr_autocorrelation(const ChannelProfile& profile, std::size_t subcarriers) {
  profile.validate();
  if (profile.max_delay() >= subcarriers) {
    throw std::invalid_argument("cfr_autocorrelation: tap delay >= subcarrier count");
  }
  ComplexVec row(subcarriers, cxd(0.0, 0.0));
  for (std::size_t l = 0; l < subcarriers; ++l) {
    cxd acc(0.0, 0.0);
    for (const ChannelTap& t : profile.taps) {
      double ang = kTwoPi * static_cast<double>(l) * static_cast<double>(t.delay) /
                   static_cast<double>(subcarriers);
      acc += t.power * cxd(std::cos(ang), std::sin(ang));
    }
    row[l] = acc;
  }
  return row;
}

ComplexVec circular_convolve(const ComplexVec& signal, const CirRealization& cir) {
  const std::size_t k = signal.size();
  if (k == 0) throw std::invalid_argument("circular_convolve: empty signal");
  if (cir.taps.size() > k) throw std::invalid_argument("circular_convolve: CIR longer than block");
  ComplexVec out(k, cxd(0.0, 0.0));
  for (std::size_t p = 0; p < cir.taps.size(); ++p) {
    const cxd gp = cir.taps[p];
    if (gp == cxd(0.0, 0.0)) continue;
    for (std::size_t n = 0; n < k; ++n) {
      out[n] += gp * signal[(n + k - p) % k];
    }
  }
  return out;
}

}  // namespace ofdmest
