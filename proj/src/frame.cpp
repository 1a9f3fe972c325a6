// SPDX-License-Identifier: Apache-2.0
#include "ofdmest/frame.hpp"

#include <cmath>
#include <sstream>

#include "ofdmest/conv_code.hpp"
#include "ofdmest/dft.hpp"
#include "ofdmest/qam.hpp"

namespace ofdmest {

double snr_db_to_sigma2(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

std::string EstimatorSpec::label() const {
  std::ostringstream os;
  switch (kind) {
    case EstimatorKind::Genie: return "genie";
    case EstimatorKind::Ml: return "ml";
    case EstimatorKind::Lmmse: return "lmmse";
    case EstimatorKind::CirThreshold: return "kang";
    case EstimatorKind::SureLinear:
      os << "sure-linear(L=" << half_window << ")";
      return os.str();
    case EstimatorKind::SureLet:
      os << "sure-let(L=" << half_window;
      if (policy == ThresholdPolicy::FixedMultiple) {
        os << ",T=" << threshold_multiple << "s2";
      } else {
        os << ",Tgrid";
      }
      os << ")";
      return os.str();
  }
  return "unknown";
}

EstimatorSpec EstimatorSpec::parse(const std::string& text) {
  EstimatorSpec spec;
  if (text == "genie") {
    spec.kind = EstimatorKind::Genie;
  } else if (text == "ml") {
    spec.kind = EstimatorKind::Ml;
  } else if (text == "lmmse") {
    spec.kind = EstimatorKind::Lmmse;
  } else if (text == "kang" || text == "cir-threshold") {
    spec.kind = EstimatorKind::CirThreshold;
  } else if (text == "sure-linear") {
    spec.kind = EstimatorKind::SureLinear;
  } else if (text == "js") {
    spec.kind = EstimatorKind::SureLinear;
    spec.half_window = 0;
  } else if (text == "sure-let") {
    spec.kind = EstimatorKind::SureLet;
  } else {
    throw std::invalid_argument("unknown estimator name: " + text);
  }
  return spec;
}

ComplexVec channel_cfr(const CirRealization& cir, std::size_t subcarriers) {
  ComplexVec h = build_cfr(cir.taps, subcarriers);
  return scaled(h, cxd(std::sqrt(static_cast<double>(subcarriers)), 0.0));
}

ComplexVec zf_equalize(const ComplexVec& data, const ComplexVec& cfr_est) {
  if (data.size() != cfr_est.size()) throw std::invalid_argument("zf_equalize: size mismatch");
  ComplexVec out(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (std::abs(cfr_est[k]) < 1e-12) {
      throw EqualizationSingularity("zf_equalize: near-zero channel estimate");
    }
    out[k] = data[k] / cfr_est[k];
  }
  return out;
}

EstimateOutput run_estimator(const EstimatorSpec& spec, const ObservationPair& obs,
                             double sigma2, const ComplexVec* c_hh_row,
                             const ComplexVec* true_cfr) {
  EstimateOutput out;
  switch (spec.kind) {
    case EstimatorKind::Genie:
      if (!true_cfr) throw std::invalid_argument("run_estimator: genie needs the true CFR");
      out.cfr = *true_cfr;
      break;
    case EstimatorKind::Ml: {
      out.cfr = estimate_ml(obs);
      const double k = static_cast<double>(obs.y.size());
      out.epsilon = sure_risk(obs.y, out.cfr, cxd(k, 0.0), sigma2).epsilon;
      break;
    }
    case EstimatorKind::Lmmse: {
      if (!c_hh_row) throw std::invalid_argument("run_estimator: lmmse needs the autocorrelation");
      out.cfr = estimate_lmmse(obs, *c_hh_row, sigma2);
      double div = lmmse_divergence(*c_hh_row, sigma2, obs.y.size());
      out.epsilon = sure_risk(obs.y, out.cfr, cxd(div, 0.0), sigma2).epsilon;
      break;
    }
    case EstimatorKind::CirThreshold:
      out.cfr = estimate_cir_threshold(obs, sigma2);
      break;
    case EstimatorKind::SureLinear: {
      auto [cfr, risk] = estimate_sure_linear(obs, sigma2, spec.half_window);
      out.cfr = std::move(cfr);
      out.epsilon = risk.epsilon;
      break;
    }
    case EstimatorKind::SureLet: {
      SureLetResult res =
          estimate_sure_let(obs, sigma2, spec.half_window, spec.policy, spec.threshold_multiple);
      out.cfr = std::move(res.cfr);
      out.epsilon = res.risk.epsilon;
      break;
    }
  }
  return out;
}

namespace {

// Draws the blank-carrier observations (pure noise) and averages |w|^2.
// Also consumed when the true variance is used so that the random stream
// position does not depend on the sigma2 source.
double blank_carrier_estimate(double sigma2, std::size_t count, Rng& rng) {
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) acc += std::norm(rng.complex_gaussian(sigma2));
  return count > 0 ? acc / static_cast<double>(count) : 0.0;
}

struct TrialSetup {
  CirRealization cir;
  ComplexVec cfr;
  ObservationPair obs;
  double estimator_sigma2 = 0.0;
};

TrialSetup prepare_trial(const ChannelProfile& profile, std::size_t subcarriers,
                         double sigma2, Rng& rng, const FrameOptions& options) {
  TrialSetup s;
  s.cir = draw_cir(profile, rng);
  s.cfr = channel_cfr(s.cir, subcarriers);
  s.obs = observe_preamble(s.cfr, sigma2, rng);
  if (options.estimated_sigma2) {
    s.estimator_sigma2 = blank_carrier_estimate(sigma2, options.blank_carriers, rng);
  } else {
    s.estimator_sigma2 = sigma2;
  }
  return s;
}

}  // namespace

TrialRecord run_mse_trial(const ChannelProfile& profile, std::size_t subcarriers,
                          const EstimatorSpec& spec, double snr_db, Rng& rng,
                          const FrameOptions& options) {
  const double sigma2 = snr_db_to_sigma2(snr_db);
  TrialSetup setup = prepare_trial(profile, subcarriers, sigma2, rng, options);
  ComplexVec c_hh;
  if (spec.kind == EstimatorKind::Lmmse) c_hh = cfr_autocorrelation(profile, subcarriers);
  EstimateOutput est = run_estimator(spec, setup.obs, setup.estimator_sigma2,
                                     c_hh.empty() ? nullptr : &c_hh, &setup.cfr);
  TrialRecord rec;
  rec.epsilon = est.epsilon;
  ComplexVec diff(est.cfr);
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= setup.cfr[k];
  rec.squared_error = energy(diff) / static_cast<double>(subcarriers);
  return rec;
}

TrialRecord run_frame(const ChannelProfile& profile, const OfdmConfig& config,
                      const EstimatorSpec& spec, double snr_db, Rng& rng,
                      const FrameOptions& options) {
  config.validate();
  const std::size_t k = config.subcarriers;
  if (profile.max_delay() + 1 > config.cp_length) {
    throw std::invalid_argument("run_frame: CIR longer than the cyclic prefix");
  }
  const double sigma2 = snr_db_to_sigma2(snr_db);
  TrialSetup setup = prepare_trial(profile, k, sigma2, rng, options);
  ComplexVec c_hh;
  if (spec.kind == EstimatorKind::Lmmse) c_hh = cfr_autocorrelation(profile, k);
  EstimateOutput est = run_estimator(spec, setup.obs, setup.estimator_sigma2,
                                     c_hh.empty() ? nullptr : &c_hh, &setup.cfr);

  TrialRecord rec;
  rec.epsilon = est.epsilon;
  {
    ComplexVec diff(est.cfr);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= setup.cfr[i];
    rec.squared_error = energy(diff) / static_cast<double>(k);
  }

  // One frame of coded 16-QAM data through the same channel realization.
  const std::size_t coded_bits = options.data_symbols * k * 4;
  const std::size_t message_bits = coded_bits / 2;
  if (message_bits <= kConvMemory) throw std::invalid_argument("run_frame: frame too short");
  BitVec message(message_bits, 0);
  for (std::size_t i = 0; i + kConvMemory < message_bits; ++i) {
    message[i] = static_cast<std::uint8_t>(rng.next_u64() & 1u);
  }
  BitVec coded = conv_encode(message);
  ComplexVec symbols = qam16_map(coded);

  BitVec received_bits;
  received_bits.reserve(coded_bits);
  bool erased = false;
  for (std::size_t sym = 0; sym < options.data_symbols; ++sym) {
    ComplexVec x(symbols.begin() + static_cast<std::ptrdiff_t>(sym * k),
                 symbols.begin() + static_cast<std::ptrdiff_t>((sym + 1) * k));
    ComplexVec tx_time = idft(x);
    ComplexVec rx_time = circular_convolve(tx_time, setup.cir);
    if (sigma2 > 0.0) {
      for (cxd& sample : rx_time) sample += rng.complex_gaussian(sigma2);
    }
    ComplexVec rx_freq = dft(rx_time);
    if (!erased) {
      try {
        ComplexVec eq = zf_equalize(rx_freq, est.cfr);
        BitVec bits = qam16_demap_hard(eq);
        received_bits.insert(received_bits.end(), bits.begin(), bits.end());
      } catch (const EqualizationSingularity&) {
        erased = true;  // keep consuming noise draws so streams stay aligned
      }
    }
  }

  if (erased) {
    rec.erased = true;
    return rec;
  }

  BitVec decoded = viterbi_decode(received_bits);
  const std::size_t info_bits = message_bits - kConvMemory;
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < info_bits; ++i) {
    if (decoded[i] != message[i]) ++errors;
  }
  rec.bit_errors = errors;
  rec.bits = info_bits;
  return rec;
}

}  // namespace ofdmest
