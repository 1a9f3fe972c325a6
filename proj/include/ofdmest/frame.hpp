// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <string>

#include "ofdmest/channel.hpp"
#include "ofdmest/estimators.hpp"
#include "ofdmest/ofdm.hpp"

namespace ofdmest {

struct EqualizationSingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EstimatorKind {
  Genie,         // uses the true CFR; validation lower bound
  Ml,            // observation as-is
  Lmmse,         // analytic autocorrelation Wiener solve
  CirThreshold,  // keep taps with |r|^2 >= 2 sigma2_hat
  SureLinear,    // risk-optimized cyclic-shift combination
  SureLet,       // shift combination plus smooth threshold branch
};

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::Ml;
  std::size_t half_window = 1;  // L for the risk-optimized estimators
  ThresholdPolicy policy = ThresholdPolicy::FixedMultiple;
  double threshold_multiple = 12.0;

  std::string label() const;
  static EstimatorSpec parse(const std::string& text);
};

struct TrialRecord {
  double squared_error = 0.0;  // ||h_hat - h||^2 / K
  double epsilon = std::numeric_limits<double>::quiet_NaN();  // risk, when defined
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  bool erased = false;  // equalization singularity; bits not counted
};

struct FrameOptions {
  bool estimated_sigma2 = false;   // estimate noise from blank carriers
  std::size_t blank_carriers = 500;
  std::size_t data_symbols = 4;    // OFDM data symbols per frame
};

// Per-carrier complex channel gains seen by the receiver DFT, unit average
// power for a unit-energy profile: sqrt(K) times the unitary-DFT CFR.
ComplexVec channel_cfr(const CirRealization& cir, std::size_t subcarriers);

// Per-subcarrier zero forcing; throws EqualizationSingularity when any
// |cfr_est_k| < 1e-12.
ComplexVec zf_equalize(const ComplexVec& data, const ComplexVec& cfr_est);

// Channel estimate for one preamble observation. `c_hh_row` is required for
// the LMMSE kind, `true_cfr` for the genie. Returns the estimate and, where
// the estimator family defines one, its risk value.
struct EstimateOutput {
  ComplexVec cfr;
  double epsilon = std::numeric_limits<double>::quiet_NaN();
};
EstimateOutput run_estimator(const EstimatorSpec& spec, const ObservationPair& obs,
                             double sigma2, const ComplexVec* c_hh_row,
                             const ComplexVec* true_cfr);

// Channel-estimation-only trial: draw CIR, observe the preamble at the noise
// level implied by snr_db (sigma2 = 10^{-snr/10}), estimate, record the
// per-carrier squared error and risk value.
TrialRecord run_mse_trial(const ChannelProfile& profile, std::size_t subcarriers,
                          const EstimatorSpec& spec, double snr_db, Rng& rng,
                          const FrameOptions& options = {});

// Full coded trial: preamble estimate, then `data_symbols` 16-QAM OFDM
// symbols through the same channel realization, zero-forcing equalization
// with the estimate, hard demap, Viterbi decode, bit-error count over the
// information bits.
TrialRecord run_frame(const ChannelProfile& profile, const OfdmConfig& config,
                      const EstimatorSpec& spec, double snr_db, Rng& rng,
                      const FrameOptions& options = {});

// sigma2 = 10^{-snr_db/10}: per-subcarrier symbol energy over noise variance
// with a unit-power constellation and unit-energy profile.
double snr_db_to_sigma2(double snr_db);

}  // namespace ofdmest
