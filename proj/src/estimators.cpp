// SPDX-License-Identifier: Apache-2.0
#include "ofdmest/estimators.hpp"

#include <cmath>

#include "ofdmest/dft.hpp"

namespace ofdmest {

namespace {

constexpr double kCondLimit = 1e12;

// Eigenvalues of a Hermitian circulant with rows c((m - k) mod K), ordered to
// match the time-tap coordinates of idft(y): lambda_p = sqrt(K) * dft(row)_p.
// For an autocorrelation row sum_q alpha_q e^{+j2pi l q/K} this recovers
// K * alpha_p at tap delay p.
std::vector<double> circulant_eigenvalues(const ComplexVec& first_row) {
  const std::size_t k = first_row.size();
  ComplexVec lambda = dft(first_row);
  const double scale = std::sqrt(static_cast<double>(k));
  std::vector<double> out(k);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < k; ++i) max_abs = std::max(max_abs, std::abs(lambda[i]) * scale);
  for (std::size_t i = 0; i < k; ++i) {
    cxd v = lambda[i] * scale;
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, max_abs)) {
      throw std::invalid_argument("estimate_lmmse: autocorrelation is not Hermitian circulant");
    }
    out[i] = v.real();
  }
  return out;
}

ComplexVec solve_weights(const CMat& basis, const ComplexVec& rhs_vec, double sigma2,
                         const std::vector<double>& divergence_row) {
  CMat g = gram(basis);
  double cond = 0.0;
  try {
    cond = cond_1norm(g);
  } catch (const SingularMatrixError&) {
    throw DegenerateObservation("normal equations singular");
  }
  if (!(cond < kCondLimit)) {
    throw DegenerateObservation("normal equations ill-conditioned");
  }
  ComplexVec rhs = matvec_adjoint(basis, rhs_vec);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= sigma2 * divergence_row[i];
  return solve_hermitian(g, rhs);
}

}  // namespace

RiskReport sure_risk(const ComplexVec& y, const ComplexVec& h_hat, cxd divergence,
                     double sigma2) {
  if (y.size() != h_hat.size()) throw std::invalid_argument("sure_risk: length mismatch");
  const double k = static_cast<double>(y.size());
  RiskReport rep;
  rep.divergence = divergence;
  rep.components.observation = (energy(y) - k * sigma2) / k;
  rep.components.estimate_energy = energy(h_hat) / k;
  rep.components.cross = -2.0 * inner(y, h_hat).real() / k;
  rep.components.degrees_of_freedom = 2.0 * sigma2 * divergence.real() / k;
  rep.epsilon = rep.components.observation + rep.components.estimate_energy +
                rep.components.cross + rep.components.degrees_of_freedom;
  return rep;
}

ComplexVec estimate_ml(const ObservationPair& obs) { return obs.y; }

ComplexVec estimate_lmmse(const ObservationPair& obs, const ComplexVec& c_hh_first_row,
                          double sigma2) {
  const std::size_t k = obs.y.size();
  if (c_hh_first_row.size() != k) {
    throw std::invalid_argument("estimate_lmmse: autocorrelation size mismatch");
  }
  if (sigma2 < 0.0) throw std::invalid_argument("estimate_lmmse: negative noise variance");
  std::vector<double> lambda = circulant_eigenvalues(c_hh_first_row);
  double lmax = 0.0;
  for (double v : lambda) lmax = std::max(lmax, std::abs(v));
  const double floor = 1e-12 * std::max(1.0, lmax);

  ComplexVec spectrum = idft(obs.y);  // coordinates in the eigenbasis
  ComplexVec gains(k);
  for (std::size_t i = 0; i < k; ++i) {
    double denom = std::max(lambda[i], 0.0) + sigma2;
    if (denom <= floor) {
      // No prior power and no noise: annul unless the observation genuinely
      // lives there, which makes the system singular.
      if (std::norm(spectrum[i]) > 1e-9 * std::max(energy(obs.y), 1e-300)) {
        throw SingularMatrixError("estimate_lmmse: singular prior with zero noise");
      }
      gains[i] = cxd(0.0, 0.0);
    } else {
      gains[i] = cxd(std::max(lambda[i], 0.0) / denom, 0.0);
    }
  }
  for (std::size_t i = 0; i < k; ++i) spectrum[i] *= gains[i];
  return dft(spectrum);
}

double lmmse_divergence(const ComplexVec& c_hh_first_row, double sigma2,
                        std::size_t subcarriers) {
  if (c_hh_first_row.size() != subcarriers) {
    throw std::invalid_argument("lmmse_divergence: autocorrelation size mismatch");
  }
  std::vector<double> lambda = circulant_eigenvalues(c_hh_first_row);
  double tr = 0.0;
  for (double v : lambda) {
    double denom = std::max(v, 0.0) + sigma2;
    if (denom > 0.0) tr += std::max(v, 0.0) / denom;
  }
  return tr;
}

ComplexVec estimate_cir_threshold(const ObservationPair& obs, double sigma2_hat) {
  if (sigma2_hat < 0.0) {
    throw std::invalid_argument("estimate_cir_threshold: negative noise variance");
  }
  const double threshold = 2.0 * sigma2_hat;
  ComplexVec kept(obs.r);
  for (cxd& tap : kept) {
    if (std::norm(tap) < threshold) tap = cxd(0.0, 0.0);
  }
  return dft(kept);
}

SureLinearParams sure_linear_weights(const CMat& shift_matrix, const ComplexVec& y,
                                     double sigma2) {
  const std::size_t n = shift_matrix.cols;
  if (n == 0 || n % 2 == 0) {
    throw std::invalid_argument("sure_linear_weights: weight count must be odd");
  }
  if (shift_matrix.rows != y.size() || n > y.size()) {
    throw std::invalid_argument("sure_linear_weights: shape mismatch");
  }
  const double k = static_cast<double>(y.size());
  SureLinearParams params;
  params.half_window = (n - 1) / 2;
  if (sigma2 == 0.0) {
    // Exact fit: the center indicator reproduces y with zero residual. This
    // also covers structurally rank-deficient observations (a flat CFR makes
    // every shifted column identical), where the minimizer set is larger.
    params.weights.assign(n, cxd(0.0, 0.0));
    params.weights[(n - 1) / 2] = cxd(1.0, 0.0);
    return params;
  }
  std::vector<double> div_row(n, 0.0);
  div_row[(n - 1) / 2] = k;
  params.weights = solve_weights(shift_matrix, y, sigma2, div_row);
  return params;
}

std::pair<ComplexVec, RiskReport> estimate_sure_linear(const ObservationPair& obs,
                                                       double sigma2,
                                                       std::size_t half_window) {
  CMat y_shift = build_shift_matrix(obs.y, half_window);
  SureLinearParams params = sure_linear_weights(y_shift, obs.y, sigma2);
  ComplexVec h_hat = matvec(y_shift, params.weights);
  const double k = static_cast<double>(obs.y.size());
  cxd divergence = k * params.weights[half_window];
  RiskReport risk = sure_risk(obs.y, h_hat, divergence, sigma2);
  return {std::move(h_hat), risk};
}

std::pair<ComplexVec, double> let_residual(const ComplexVec& r, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("let_residual: threshold must be > 0");
  ComplexVec out(r.size());
  double divergence = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double u = std::norm(r[i]) / threshold;
    const double e = std::exp(-u);
    out[i] = r[i] * e;
    divergence += e * (1.0 - u);
  }
  return {std::move(out), divergence};
}

SureLetResult estimate_sure_let(const ObservationPair& obs, double sigma2,
                                std::size_t half_window, ThresholdPolicy policy,
                                double fixed_multiple) {
  const std::size_t k = obs.y.size();
  if (2 * half_window + 2 > k) {
    throw std::invalid_argument("estimate_sure_let: window too wide for block");
  }
  if (sigma2 == 0.0) {
    // Exact fit: the observation is the channel and the threshold branch
    // carries no information (its column is numerically null), so the unique
    // risk minimizer is the center indicator.
    SureLetResult res;
    res.params.half_window = half_window;
    res.params.policy = policy;
    res.params.threshold = 0.0;
    res.params.weights.assign(2 * half_window + 2, cxd(0.0, 0.0));
    res.params.weights[half_window] = cxd(1.0, 0.0);
    res.cfr = obs.y;
    res.risk = sure_risk(obs.y, obs.y, cxd(static_cast<double>(k), 0.0), 0.0);
    return res;
  }
  CMat y_shift = build_shift_matrix(obs.y, half_window);

  auto solve_for = [&](double threshold) -> SureLetResult {
    auto [r_t, div_rt] = let_residual(obs.r, threshold);
    CMat basis = y_shift;
    basis.append_column(dft(r_t));
    std::vector<double> div_row(basis.cols, 0.0);
    div_row[half_window] = static_cast<double>(k);
    div_row[basis.cols - 1] = div_rt;
    SureLetResult res;
    res.params.half_window = half_window;
    res.params.threshold = threshold;
    res.params.policy = policy;
    res.params.weights = solve_weights(basis, obs.y, sigma2, div_row);
    res.cfr = matvec(basis, res.params.weights);
    cxd divergence = static_cast<double>(k) * res.params.weights[half_window] +
                     div_rt * res.params.weights[basis.cols - 1];
    res.risk = sure_risk(obs.y, res.cfr, divergence, sigma2);
    return res;
  };

  if (policy == ThresholdPolicy::FixedMultiple) {
    return solve_for(fixed_multiple * sigma2);
  }

  // Geometric grid over (0.5 sigma2, 25 sigma2], 25 points.
  constexpr int kGridPoints = 25;
  SureLetResult best;
  bool have_best = false;
  for (int j = 0; j < kGridPoints; ++j) {
    double t = 0.5 * sigma2 *
               std::pow(50.0, static_cast<double>(j) / static_cast<double>(kGridPoints - 1));
    SureLetResult candidate;
    try {
      candidate = solve_for(t);
    } catch (const DegenerateObservation&) {
      continue;  // skip unusable grid points, keep searching
    }
    if (!have_best || candidate.risk.epsilon < best.risk.epsilon) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  if (!have_best) throw DegenerateObservation("estimate_sure_let: whole threshold grid degenerate");
  return best;
}

ComplexVec hard_threshold(const ComplexVec& r, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("hard_threshold: negative threshold");
  ComplexVec out(r);
  for (cxd& tap : out) {
    if (std::abs(tap) < threshold) tap = cxd(0.0, 0.0);
  }
  return out;
}

ComplexVec soft_threshold(const ComplexVec& r, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("soft_threshold: negative threshold");
  ComplexVec out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    double mag = std::abs(r[i]);
    if (mag <= threshold) {
      out[i] = cxd(0.0, 0.0);
    } else {
      out[i] = r[i] * ((mag - threshold) / mag);
    }
  }
  return out;
}

}  // namespace ofdmest
