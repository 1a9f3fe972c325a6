// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo sweep driver: `ofdmest mse ...` estimates channel-estimation
// MSE across an SNR grid, `ofdmest ber ...` runs the full coded 16-QAM chain.
// Results go to the CSV path (or stdout); progress and the effective
// configuration go to stderr.
#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "ofdmest/harness.hpp"

namespace {

using namespace ofdmest;

struct CliOptions {
  std::string scenario = "tu6";
  std::size_t subcarriers = 64;
  std::vector<double> snr_grid = {0, 5, 10, 15, 20, 25};
  std::size_t trials = 2000;
  std::vector<std::string> estimators = {"ml", "lmmse", "kang", "sure-linear", "sure-let"};
  std::uint64_t seed = 1;
  std::string sigma2_source;  // "true" | "est"; default depends on the mode
  std::string threshold_policy = "fixed";
  std::size_t half_window = 1;
  std::size_t blank_carriers = 500;
  std::size_t data_symbols = 4;
  std::string out_path;
  unsigned threads = 0;
};

std::string resolve_scenario(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return name;
  std::vector<std::string> candidates;
  if (name.find('/') == std::string::npos) {
    if (const char* dir = std::getenv("OFDMEST_PROFILES")) {
      candidates.push_back(std::string(dir) + "/" + name + ".prof");
    }
    candidates.push_back("profiles/" + name + ".prof");
  }
  for (const std::string& c : candidates) {
    if (fs::exists(c)) return c;
  }
  return name;  // let the loader produce the error with the original path
}

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--scenario", opt.scenario,
                  "Channel profile path or fixture name (awgn, rayleigh1, tu6)");
  cmd->add_option("--k", opt.subcarriers, "OFDM symbol size (power of two)");
  cmd->add_option("--snr", opt.snr_grid, "SNR grid in dB")->delimiter(',');
  cmd->add_option("--trials", opt.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--estimators", opt.estimators,
                  "Estimators: genie, ml, lmmse, kang, js, sure-linear, sure-let")
      ->delimiter(',');
  cmd->add_option("--seed", opt.seed, "Base seed for the reproducible trial streams");
  cmd->add_option("--sigma2", opt.sigma2_source,
                  "Noise variance source for the estimators: true | est")
      ->check(CLI::IsMember({"true", "est"}));
  cmd->add_option("--threshold-policy", opt.threshold_policy,
                  "Threshold choice for sure-let: fixed (12 sigma^2) | grid")
      ->check(CLI::IsMember({"fixed", "grid"}));
  cmd->add_option("--l", opt.half_window, "Half-window L for the sure estimators");
  cmd->add_option("--blank-carriers", opt.blank_carriers,
                  "Blank carriers per trial for the noise-variance estimate");
  cmd->add_option("--data-symbols", opt.data_symbols, "Data OFDM symbols per frame (ber mode)");
  cmd->add_option("--out", opt.out_path, "CSV output path (default: stdout)");
  cmd->add_option("--threads", opt.threads, "Worker threads (default: hardware)");
  cmd->set_config("--config", "", "Key-value experiment file; flags override");
}

ExperimentConfig to_config(const CliOptions& opt, SweepMode mode) {
  ExperimentConfig cfg;
  cfg.scenario = resolve_scenario(opt.scenario);
  cfg.subcarriers = opt.subcarriers;
  cfg.snr_grid_db = opt.snr_grid;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  cfg.mode = mode;
  cfg.blank_carriers = opt.blank_carriers;
  cfg.data_symbols = opt.data_symbols;
  cfg.output_path = opt.out_path;
  cfg.threads = opt.threads;

  std::string sigma2 = opt.sigma2_source;
  if (sigma2.empty()) sigma2 = (mode == SweepMode::Ber) ? "est" : "true";
  cfg.sigma2_source = sigma2 == "est" ? Sigma2Source::Estimated : Sigma2Source::True;

  for (const std::string& name : opt.estimators) {
    EstimatorSpec spec = EstimatorSpec::parse(name);
    if (spec.kind == EstimatorKind::SureLinear || spec.kind == EstimatorKind::SureLet) {
      if (name != "js") spec.half_window = opt.half_window;
    }
    if (spec.kind == EstimatorKind::SureLet) {
      spec.policy = opt.threshold_policy == "grid" ? ThresholdPolicy::GridSearch
                                                   : ThresholdPolicy::FixedMultiple;
    }
    cfg.estimators.push_back(spec);
  }
  return cfg;
}

int run(const ExperimentConfig& cfg) {
  std::fprintf(stderr,
               "config: scenario=%s k=%zu trials=%zu seed=%llu mode=%s sigma2=%s "
               "estimators=%zu\n",
               cfg.scenario.c_str(), cfg.subcarriers, cfg.trials,
               static_cast<unsigned long long>(cfg.seed),
               cfg.mode == SweepMode::Ber ? "ber" : "mse",
               cfg.sigma2_source == Sigma2Source::Estimated ? "est" : "true",
               cfg.estimators.size());
  SweepTable table = run_sweep(cfg);
  if (cfg.output_path.empty()) {
    write_csv(table, std::cout);
  } else {
    write_csv(table, cfg.output_path);
    std::fprintf(stderr, "wrote %s\n", cfg.output_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDM preamble channel-estimation Monte Carlo harness"};
  app.require_subcommand(1);

  CliOptions mse_opt;
  CliOptions ber_opt;
  CLI::App* mse = app.add_subcommand("mse", "Channel-estimation MSE sweep");
  CLI::App* ber = app.add_subcommand("ber", "Coded bit-error-rate sweep");
  add_common_options(mse, mse_opt);
  add_common_options(ber, ber_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (mse->parsed()) return run(to_config(mse_opt, SweepMode::Mse));
    return run(to_config(ber_opt, SweepMode::Ber));
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
