// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "ofdmest/frame.hpp"

namespace ofdmest {

enum class SweepMode { Mse, Ber };
enum class Sigma2Source { True, Estimated };

struct ExperimentConfig {
  std::string scenario;  // profile path (or bare fixture name for the CLI)
  std::size_t subcarriers = 64;
  std::vector<double> snr_grid_db;
  std::size_t trials = 1000;
  std::vector<EstimatorSpec> estimators;
  std::uint64_t seed = 1;
  SweepMode mode = SweepMode::Mse;
  Sigma2Source sigma2_source = Sigma2Source::True;
  std::size_t blank_carriers = 500;
  std::size_t data_symbols = 4;
  std::string output_path;  // empty = stdout
  unsigned threads = 0;     // 0 = hardware concurrency

  void validate() const;
};

struct SweepRow {
  std::string scenario;
  std::string estimator;
  std::size_t subcarriers = 0;
  double snr_db = 0.0;
  std::size_t trials = 0;
  double mse_mean = 0.0;
  double mse_ci95 = 0.0;
  double ber = 0.0;
  std::uint64_t bit_count = 0;
  std::uint64_t erasure_count = 0;
  double mean_epsilon = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

// Mean |w|^2 over blank-carrier observations (pure noise samples).
double estimate_noise_variance(const ComplexVec& blank_obs);

// Runs trials for every (snr, estimator) cell. Per-trial generators are
// derived from (seed, scenario name, K, snr index, trial index) only, so all
// estimators in a cell share channel/noise draws and the result is
// bit-identical for a given config regardless of the thread count.
SweepTable run_sweep(const ExperimentConfig& config, const ChannelProfile& profile);

// Loads the profile from config.scenario first.
SweepTable run_sweep(const ExperimentConfig& config);

// Header plus one row per cell, RFC-4180-style quoting, 9 significant digits.
void write_csv(const SweepTable& table, std::ostream& out);
void write_csv(const SweepTable& table, const std::string& path);

// True when every estimator's MSE is non-increasing in SNR up to the given
// number of CI widths of slack.
bool mse_monotone_in_snr(const SweepTable& table, double ci_widths = 2.0);

}  // namespace ofdmest
