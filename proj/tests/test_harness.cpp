// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ofdmest/harness.hpp"

using namespace ofdmest;

namespace {
const std::string kProfileDir = OFDMEST_PROFILE_DIR;

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.scenario = kProfileDir + "/tu6.prof";
  cfg.subcarriers = 64;
  cfg.snr_grid_db = {5.0, 15.0};
  cfg.trials = 50;
  cfg.estimators = {EstimatorSpec::parse("ml"), EstimatorSpec::parse("sure-linear")};
  cfg.seed = 7;
  cfg.mode = SweepMode::Mse;
  return cfg;
}
}  // namespace

TEST_CASE("noise variance estimator basics") {
  CHECK(estimate_noise_variance(ComplexVec(10, cxd(0, 0))) == 0.0);
  CHECK_THROWS_AS(estimate_noise_variance({}), std::invalid_argument);

  // Scaling: inputs scaled by c scale the output by |c|^2.
  Rng rng(101);
  ComplexVec w(100);
  for (auto& x : w) x = rng.complex_gaussian(0.7);
  double base = estimate_noise_variance(w);
  CHECK(estimate_noise_variance(scaled(w, cxd(0, 2))) == doctest::Approx(4.0 * base).epsilon(1e-12));
}

TEST_CASE("noise variance estimator concentrates over 500 carriers") {
  // Chi-square concentration: relative error <= 10% with probability >= 0.97,
  // checked over repeated batches.
  Rng rng(102);
  const double sigma2 = 0.31;
  const int reps = 3000;
  int ok = 0;
  for (int rep = 0; rep < reps; ++rep) {
    ComplexVec w(500);
    for (auto& x : w) x = rng.complex_gaussian(sigma2);
    double est = estimate_noise_variance(w);
    if (std::abs(est / sigma2 - 1.0) <= 0.10) ++ok;
  }
  CHECK(double(ok) / reps >= 0.97);
}

TEST_CASE("sweep is deterministic across thread counts and repeats") {
  ExperimentConfig cfg = small_config();
  cfg.threads = 1;
  SweepTable a = run_sweep(cfg);
  SweepTable b = run_sweep(cfg);
  cfg.threads = 4;
  SweepTable c = run_sweep(cfg);

  auto dump = [](const SweepTable& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
  };
  CHECK(dump(a) == dump(b));
  CHECK(dump(a) == dump(c));
}

TEST_CASE("ml mse matches the noise variance in a sweep") {
  ExperimentConfig cfg = small_config();
  cfg.estimators = {EstimatorSpec::parse("ml")};
  cfg.trials = 400;
  SweepTable t = run_sweep(cfg);
  for (const SweepRow& row : t.rows) {
    double sigma2 = snr_db_to_sigma2(row.snr_db);
    CHECK(std::abs(row.mse_mean - sigma2) <= 2.5 * row.mse_ci95 + 1e-12);
    // For the identity denoiser mean epsilon is sigma2 exactly.
    CHECK(row.mean_epsilon == doctest::Approx(sigma2).epsilon(1e-9));
  }
}

TEST_CASE("mean epsilon tracks measured mse for the risk-optimized estimators") {
  // Per-trial re-optimization makes the reported risk slightly optimistic:
  // the omitted weight-derivative part of the divergence is bounded by the
  // weight count, giving |bias| <= 2 sigma2 (N+1) / K on top of the
  // statistical tolerance.
  ExperimentConfig cfg = small_config();
  cfg.estimators = {EstimatorSpec::parse("lmmse"), EstimatorSpec::parse("sure-linear"),
                    EstimatorSpec::parse("sure-let")};
  cfg.trials = 2000;
  cfg.snr_grid_db = {10.0};
  SweepTable t = run_sweep(cfg);
  const double sigma2 = snr_db_to_sigma2(10.0);
  const double optimism = 2.0 * sigma2 * 4.0 / 64.0;
  for (const SweepRow& row : t.rows) {
    CHECK(std::isfinite(row.mean_epsilon));
    CHECK(row.mean_epsilon <= row.mse_mean + 3.0 * row.mse_ci95);
    if (row.estimator == "lmmse") {
      // Fixed map: plain statistical band, no refit optimism.
      CHECK(row.mean_epsilon >= row.mse_mean - 3.0 * row.mse_ci95);
    } else {
      CHECK(row.mean_epsilon >= row.mse_mean - optimism - 3.0 * row.mse_ci95);
    }
  }
}

TEST_CASE("csv output is stable, quoted, and round-trips") {
  SweepTable t;
  SweepRow r;
  r.scenario = "tu,6 \"quoted\"";
  r.estimator = "ml";
  r.subcarriers = 64;
  r.snr_db = 12.5;
  r.trials = 3;
  r.mse_mean = 0.123456789123;
  r.mse_ci95 = 0.001;
  r.ber = 0.25;
  r.bit_count = 4;
  r.erasure_count = 1;
  r.mean_epsilon = 0.12;
  t.rows.push_back(r);

  std::ostringstream os;
  write_csv(t, os);
  std::string text = os.str();
  CHECK(text.find("\"tu,6 \"\"quoted\"\"\"") != std::string::npos);
  CHECK(text.find("0.123456789") != std::string::npos);

  std::ostringstream os2;
  write_csv(t, os2);
  CHECK(text == os2.str());

  // Header-only for an empty table.
  std::ostringstream os3;
  write_csv(SweepTable{}, os3);
  CHECK(os3.str() ==
        "scenario,estimator,k,snr_db,trials,mse_mean,mse_ci95,ber,bit_count,"
        "erasure_count,mean_epsilon\n");

  // Round-trip the numeric fields of the emitted row.
  std::istringstream in(text);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  CHECK(line.substr(line.find(",ml,") + 4) ==
        "64,12.5,3,0.123456789,0.001,0.25,4,1,0.12");
}

TEST_CASE("mse trend check accepts monotone tables and rejects inversions") {
  SweepTable t;
  for (double snr : {0.0, 10.0, 20.0}) {
    SweepRow r;
    r.estimator = "ml";
    r.snr_db = snr;
    r.mse_mean = 1.0 / (1.0 + snr);
    r.mse_ci95 = 1e-3;
    t.rows.push_back(r);
  }
  CHECK(mse_monotone_in_snr(t));
  t.rows[2].mse_mean = 2.0;
  CHECK_FALSE(mse_monotone_in_snr(t));
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.snr_grid_db.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.subcarriers = 100;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.estimators.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("unknown scenario path surfaces an error") {
  ExperimentConfig cfg = small_config();
  cfg.scenario = "/nonexistent/path.prof";
  CHECK_THROWS(run_sweep(cfg));
}

TEST_CASE("csv write failures carry the path") {
  SweepTable t;
  try {
    write_csv(t, "/nonexistent-dir/out.csv");
    FAIL("expected an exception");
  } catch (const std::runtime_error& ex) {
    CHECK(std::string(ex.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
  }
}
