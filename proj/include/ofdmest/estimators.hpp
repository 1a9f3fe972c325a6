// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "ofdmest/linalg.hpp"
#include "ofdmest/ofdm.hpp"
#include "ofdmest/signal.hpp"

namespace ofdmest {

// Raised when an observation leads to an ill-conditioned normal-equation
// system (condition estimate above 1e12).
struct DegenerateObservation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-carrier unbiased risk estimate and its pieces. `epsilon` is the sum of
// the four components, each already scaled by 1/K:
//   observation      = (||y||^2 - K sigma2) / K
//   estimate_energy  = ||h_hat||^2 / K
//   cross            = -2 Re{y^H h_hat} / K
//   degrees_of_freedom = 2 sigma2 Re{divergence} / K
struct RiskComponents {
  double observation = 0.0;
  double estimate_energy = 0.0;
  double cross = 0.0;
  double degrees_of_freedom = 0.0;
};

struct RiskReport {
  double epsilon = 0.0;
  cxd divergence{0.0, 0.0};
  RiskComponents components;
};

// Unbiased risk of the denoised estimate h_hat = f(y) given the trace of the
// denoiser's Jacobian (holomorphic part) with respect to y.
RiskReport sure_risk(const ComplexVec& y, const ComplexVec& h_hat, cxd divergence,
                     double sigma2);

// --- baselines ---------------------------------------------------------

// The observation itself.
ComplexVec estimate_ml(const ObservationPair& obs);

// Wiener solve (C + sigma2 I)^{-1} C y for a Hermitian circulant C given by
// its first row; diagonalizes in the DFT basis. Eigendirections with zero
// prior power and zero noise are annulled; if the observation carries energy
// there with sigma2 = 0 the system is genuinely singular and throws.
ComplexVec estimate_lmmse(const ObservationPair& obs, const ComplexVec& c_hh_first_row,
                          double sigma2);

// Trace of the LMMSE matrix (sum of the per-eigendirection gains), the
// divergence of the linear map for risk reporting.
double lmmse_divergence(const ComplexVec& c_hh_first_row, double sigma2,
                        std::size_t subcarriers);

// Zeroes every time-domain observation tap with |r_k|^2 < 2 sigma2_hat and
// transforms back to the frequency domain.
ComplexVec estimate_cir_threshold(const ObservationPair& obs, double sigma2_hat);

// --- risk-optimized linear estimator ------------------------------------

struct SureLinearParams {
  std::size_t half_window = 1;   // L; the weight vector has 2L+1 entries
  std::vector<cxd> weights;      // a_{-L} .. a_0 .. a_{+L}
};

// Solves (Y^H Y) a = Y^H y - sigma2 * b with b = K at the center lag,
// the stationarity condition of the unbiased risk over the weight space.
SureLinearParams sure_linear_weights(const CMat& shift_matrix, const ComplexVec& y,
                                     double sigma2);

// h_hat = Y a with risk report; divergence is K * a_0.
std::pair<ComplexVec, RiskReport> estimate_sure_linear(const ObservationPair& obs,
                                                       double sigma2,
                                                       std::size_t half_window);

// --- risk-optimized nonlinear (thresholded) estimator -------------------

// Smooth shrinkage residual r_T with r_T[k] = r_k * exp(-|r_k|^2 / T) and
// the real divergence sum_k exp(-u_k) (1 - u_k), u_k = |r_k|^2 / T.
std::pair<ComplexVec, double> let_residual(const ComplexVec& r, double threshold);

enum class ThresholdPolicy {
  FixedMultiple,  // T = multiple * sigma2 (default multiple 12)
  GridSearch,     // 25-point geometric grid over (0.5 sigma2, 25 sigma2]
};

struct SureLetParams {
  std::size_t half_window = 1;
  std::vector<cxd> weights;  // a_{-L} .. a_{+L}, a_{L+1} (threshold branch)
  double threshold = 0.0;
  ThresholdPolicy policy = ThresholdPolicy::FixedMultiple;
};

struct SureLetResult {
  ComplexVec cfr;
  SureLetParams params;
  RiskReport risk;
};

// Augments the shift matrix with y_T = dft(r_T) and solves
// (Y_T^H Y_T) a = Y_T^H y - sigma2 * beta, beta = (0..0, K, 0..0, div r_T).
SureLetResult estimate_sure_let(const ObservationPair& obs, double sigma2,
                                std::size_t half_window,
                                ThresholdPolicy policy = ThresholdPolicy::FixedMultiple,
                                double fixed_multiple = 12.0);

// --- reference point thresholds (plots and tests only) ------------------

// Keeps taps with |r_k| >= T (boundary kept), zeroes the rest.
ComplexVec hard_threshold(const ComplexVec& r, double threshold);

// max(|r_k| - T, 0) * e^{j angle(r_k)}
ComplexVec soft_threshold(const ComplexVec& r, double threshold);

}  // namespace ofdmest
