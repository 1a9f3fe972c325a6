// SPDX-License-Identifier: Apache-2.0
#include "ofdmest/harness.hpp"

#include <algorithm>
#include <chrono>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ofdmest {

void ExperimentConfig::validate() const {
  if (scenario.empty()) throw std::invalid_argument("config: scenario required");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (snr_grid_db.empty()) throw std::invalid_argument("config: SNR grid empty");
  if (estimators.empty()) throw std::invalid_argument("config: no estimators");
  if (subcarriers < 8 || (subcarriers & (subcarriers - 1)) != 0) {
    throw std::invalid_argument("config: K must be a power of two >= 8");
  }
}

double estimate_noise_variance(const ComplexVec& blank_obs) {
  if (blank_obs.empty()) throw std::invalid_argument("estimate_noise_variance: empty input");
  return energy(blank_obs) / static_cast<double>(blank_obs.size());
}

namespace {

struct CellAccumulator {
  // Indexed by trial so reduction order is fixed regardless of which thread
  // produced an entry.
  std::vector<TrialRecord> records;
};

SweepRow reduce_cell(const ExperimentConfig& config, const std::string& scenario_name,
                     const std::string& estimator_label, double snr_db,
                     const std::vector<TrialRecord>& records) {
  SweepRow row;
  row.scenario = scenario_name;
  row.estimator = estimator_label;
  row.subcarriers = config.subcarriers;
  row.snr_db = snr_db;
  row.trials = records.size();

  double sum = 0.0;
  double sum_sq = 0.0;
  double eps_sum = 0.0;
  std::size_t eps_n = 0;
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t erasures = 0;
  for (const TrialRecord& r : records) {
    sum += r.squared_error;
    sum_sq += r.squared_error * r.squared_error;
    if (std::isfinite(r.epsilon)) {
      eps_sum += r.epsilon;
      ++eps_n;
    }
    errors += r.bit_errors;
    bits += r.bits;
    if (r.erased) ++erasures;
  }
  const double n = static_cast<double>(records.size());
  row.mse_mean = sum / n;
  double var = std::max(0.0, sum_sq / n - row.mse_mean * row.mse_mean);
  row.mse_ci95 = n > 1 ? 1.96 * std::sqrt(var / (n - 1.0)) : 0.0;
  row.ber = bits > 0 ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
  row.bit_count = bits;
  row.erasure_count = erasures;
  row.mean_epsilon =
      eps_n > 0 ? eps_sum / static_cast<double>(eps_n) : std::numeric_limits<double>::quiet_NaN();
  return row;
}

}  // namespace

SweepTable run_sweep(const ExperimentConfig& config, const ChannelProfile& profile) {
  config.validate();
  profile.validate();

  FrameOptions options;
  options.estimated_sigma2 = (config.sigma2_source == Sigma2Source::Estimated);
  options.blank_carriers = config.blank_carriers;
  options.data_symbols = config.data_symbols;

  OfdmConfig ofdm;
  ofdm.subcarriers = config.subcarriers;
  ofdm.cp_length = std::max<std::size_t>(config.subcarriers / 4, 32);

  const std::uint64_t scenario_hash = fnv1a64(profile.name);
  unsigned thread_count = config.threads != 0 ? config.threads
                                              : std::max(1u, std::thread::hardware_concurrency());

  SweepTable table;
  for (std::size_t snr_idx = 0; snr_idx < config.snr_grid_db.size(); ++snr_idx) {
    const double snr_db = config.snr_grid_db[snr_idx];
    const auto cell_start = std::chrono::steady_clock::now();
    // records[estimator][trial]
    std::vector<std::vector<TrialRecord>> records(config.estimators.size());
    for (auto& r : records) r.resize(config.trials);

    std::atomic<std::size_t> next_trial{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
      for (;;) {
        std::size_t trial = next_trial.fetch_add(1);
        if (trial >= config.trials || failed.load()) break;
        try {
          for (std::size_t e = 0; e < config.estimators.size(); ++e) {
            // Same stream for every estimator in the cell: common random
            // numbers sharpen estimator comparisons.
            Rng rng(derive_stream(config.seed,
                                  {scenario_hash, config.subcarriers, snr_idx, trial}));
            if (config.mode == SweepMode::Mse) {
              records[e][trial] = run_mse_trial(profile, config.subcarriers,
                                                config.estimators[e], snr_db, rng, options);
            } else {
              records[e][trial] =
                  run_frame(profile, ofdm, config.estimators[e], snr_db, rng, options);
            }
          }
        } catch (const std::exception& ex) {
          std::lock_guard<std::mutex> lock(error_mutex);
          error_message = ex.what();
          failed.store(true);
          break;
        }
      }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 1; t < thread_count; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failed.load()) throw std::runtime_error("run_sweep: " + error_message);

    for (std::size_t e = 0; e < config.estimators.size(); ++e) {
      table.rows.push_back(reduce_cell(config, profile.name, config.estimators[e].label(),
                                       snr_db, records[e]));
    }
    const double cell_secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - cell_start).count();
    std::fprintf(stderr, "sweep: %s K=%zu snr=%g dB done (%zu trials x %zu estimators, %.1fs)\n",
                 profile.name.c_str(), config.subcarriers, snr_db, config.trials,
                 config.estimators.size(), cell_secs);
  }
  return table;
}

SweepTable run_sweep(const ExperimentConfig& config) {
  ChannelProfile profile = ChannelProfile::load(config.scenario);
  return run_sweep(config, profile);
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_csv(const SweepTable& table, std::ostream& out) {
  out << "scenario,estimator,k,snr_db,trials,mse_mean,mse_ci95,ber,bit_count,"
         "erasure_count,mean_epsilon\n";
  for (const SweepRow& r : table.rows) {
    out << csv_quote(r.scenario) << ',' << csv_quote(r.estimator) << ',' << r.subcarriers
        << ',' << fmt9(r.snr_db) << ',' << r.trials << ',' << fmt9(r.mse_mean) << ','
        << fmt9(r.mse_ci95) << ',' << fmt9(r.ber) << ',' << r.bit_count << ','
        << r.erasure_count << ',' << fmt9(r.mean_epsilon) << '\n';
  }
}

void write_csv(const SweepTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  write_csv(table, out);
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

bool mse_monotone_in_snr(const SweepTable& table, double ci_widths) {
  std::map<std::string, std::vector<std::pair<double, std::pair<double, double>>>> series;
  for (const SweepRow& r : table.rows) {
    series[r.estimator].push_back({r.snr_db, {r.mse_mean, r.mse_ci95}});
  }
  for (auto& [name, pts] : series) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < pts.size(); ++i) {
      double slack = ci_widths * (pts[i].second.second + pts[i - 1].second.second);
      if (pts[i].second.first > pts[i - 1].second.first + slack) return false;
    }
  }
  return true;
}

}  // namespace ofdmest
