// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria and tolerances are pinned here; runtimes are enforced.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "scmac/calibration.hpp"
#include "scmac/converters.hpp"
#include "scmac/experiments.hpp"
#include "scmac/noise.hpp"
#include "scmac/synth.hpp"

using namespace scmac;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// 1. recurrence/effective-matrix equivalence over random triples
void criterion_recurrence_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> volt(-0.25, 0.25);
  std::uniform_int_distribution<int> code(-4, 3);
  std::uniform_int_distribution<int> cycles(1, 96);
  std::uniform_real_distribution<double> ratio(5.0, 80.0);
  std::bernoulli_distribution active(0.3);
  std::uniform_real_distribution<double> gain(10.0, 1e6);

  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    MacConfig cfg;
    cfg.cycles_per_product = cycles(rng);
    cfg.c2_ratio = ratio(rng);
    if (active(rng)) {
      cfg.mode = MacMode::Active;
      cfg.dc_gain = gain(rng);
    }
    const int n = cfg.cycles_per_product;
    WeightMatrix w;
    w.codes.resize(1, n);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
      w.codes(0, i) = code(rng);
      x[i] = volt(rng);
    }
    const Eigen::VectorXi row = w.codes.row(0);
    const double via_recurrence = mac_inner_product(x, row, cfg)[n];
    const double via_matrix = effective_matrix(w, cfg).row(0).dot(x);
    const double err = std::abs(via_recurrence - via_matrix) /
                       std::max(1.0, std::abs(via_matrix));
    worst = std::max(worst, err);
  }
  const double elapsed = seconds_since(t0);
  report(1, "recurrence equals effective matrix",
         worst <= 1e-12 && elapsed < 10.0,
         "worst rel err " + std::to_string(worst) + ", " +
             std::to_string(elapsed) + " s");
}

// 2. per-cycle residual charge bound at the default ratio
void criterion_residual_charge() {
  MacConfig cfg;
  const double fraction = cfg.cs_total() / (cfg.cs_total() + cfg.c2());
  report(2, "residual charge bound", fraction <= 0.027,
         "fraction " + std::to_string(fraction) + " <= 0.027");
}

// 3. noise sigma: monotone increase, steady-state ratio window
void criterion_noise_steady_state() {
  MacConfig cfg;
  const double steady = sigma_steady_state(cfg);
  bool increasing = true;
  double prev = -1.0;
  for (int i = 0; i <= 64; ++i) {
    const double s = sigma_after_cycles(i, cfg.cs_total(), cfg);
    if (s <= prev) increasing = false;
    prev = s;
  }
  const double ratio = sigma_after_cycles(1000000, cfg.cs_total(), cfg) / steady;
  const double sigma64 = sigma_after_cycles(64, cfg.cs_total(), cfg);
  const bool pass =
      increasing && ratio >= 0.999 && ratio <= 1.0 && sigma64 < steady;
  report(3, "noise steady state", pass,
         "ratio(1e6) " + std::to_string(ratio) + ", sigma(64)/steady " +
             std::to_string(sigma64 / steady));
}

// 4. Monte Carlo stddev vs the worst-case closed form
void criterion_noise_monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();
  Pipeline pipe;
  NoiseMcOptions opt;
  opt.trials = 10000;
  const ExperimentReport rep = run_noise_mc(pipe, opt, 90210, {}, 2);
  const double rel = rep.metrics.at("relative_error");
  const double elapsed = seconds_since(t0);
  report(4, "Monte Carlo vs analytic sigma", rel <= 0.05 && elapsed < 60.0,
         "rel err " + std::to_string(rel) + ", " + std::to_string(elapsed) +
             " s");
}

// 5. calibration optimality and monotone improvement
void criterion_calibration() {
  MacConfig cfg;
  const Eigen::MatrixXd basis = dct_basis(cfg.cycles_per_product);
  const double scale = basis.cwiseAbs().maxCoeff() / 3.0;
  const WeightMatrix w{quantize_matrix(basis.topRows(8), scale, 3), 3};
  const Eigen::MatrixXd target = basis.topRows(8);
  const EffectiveMatrix actual = effective_matrix(w, cfg);
  const CalibrationResult r =
      solve_correction(target, actual, FeasibleSet::unconstrained());

  std::mt19937_64 rng(555);
  std::uniform_int_distribution<int> row(0, int(r.b.rows()) - 1);
  std::uniform_int_distribution<int> col(0, int(r.b.cols()) - 1);
  std::bernoulli_distribution sign;
  bool stationary = true;
  for (int k = 0; k < 100; ++k) {
    Eigen::MatrixXd b = r.b;
    b(row(rng), col(rng)) += sign(rng) ? 1e-6 : -1e-6;
    if ((target - b * actual).norm() < r.residual_frobenius)
      stationary = false;
  }

  const ExperimentReport ortho =
      run_orthonormal(Pipeline{}, OrthonormalOptions{}, 0, {});
  const bool improves = ortho.metrics.at("mse_calibrated") <=
                        ortho.metrics.at("mse_uncalibrated");
  report(5, "calibration optimality", stationary && improves,
         "stationary " + std::string(stationary ? "yes" : "no") +
             ", mse cal/uncal " +
             std::to_string(ortho.metrics.at("mse_calibrated")) + "/" +
             std::to_string(ortho.metrics.at("mse_uncalibrated")));
}

// 6. matched filter: variance non-increasing with an lsb-level floor
void criterion_matched_filter() {
  const auto t0 = std::chrono::steady_clock::now();
  Pipeline pipe;
  pipe.noise.enabled = true;
  pipe.noise.rng_seed = 42;
  MatchedFilterOptions opt;  // 6 SNR points, 25 trials
  const ExperimentReport rep = run_matched_filter(pipe, opt, 42, {}, 1);
  const double elapsed = seconds_since(t0);
  const bool monotone =
      rep.metrics.at("variance_monotone_nonincreasing") == 1.0;
  const double lsb = pipe.adc.lsb;
  const bool floors = rep.metrics.at("variance_at_max_snr") <= lsb * lsb;
  report(6, "matched filter variance sweep",
         monotone && floors && elapsed < 30.0,
         "monotone " + std::string(monotone ? "yes" : "no") + ", floor " +
             std::to_string(rep.metrics.at("variance_at_max_snr")) + " V^2, " +
             std::to_string(elapsed) + " s");
}

// 7. compression counters are exact integer identities
void criterion_compression_counters() {
  Pipeline pipe;
  ConversionCounters counters;
  run_compression_layer(pipe, CompressionLayerOptions{}, 1, {}, &counters);
  const double ratio = counters.compression_ratio();
  const bool pass = counters.ad_conversions == 144 &&
                    counters.input_samples == 3072 &&
                    std::abs(ratio - 3072.0 / 144.0) < 1e-12 &&
                    counters.digitization_rate_divisor == 64;
  report(7, "compression counters", pass,
         "conversions " + std::to_string(counters.ad_conversions) +
             ", ratio " + std::to_string(ratio) + ", rate divisor " +
             std::to_string(counters.digitization_rate_divisor));
}

// 8. SGD offload trajectory error and ideal-mode equivalence
void criterion_sgd_offload() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentReport rep =
      run_sgd_offload(Pipeline{}, SgdOffloadOptions{}, 0, {});
  SgdOffloadOptions ideal;
  ideal.ideal = true;
  const ExperimentReport rep_ideal =
      run_sgd_offload(Pipeline{}, ideal, 0, {});
  const double elapsed = seconds_since(t0);
  const bool pass = rep.metrics.at("mean_nmse") <= 0.02 &&
                    rep_ideal.metrics.at("mean_nmse") <= 1e-9 &&
                    elapsed < 60.0;
  report(8, "sgd offload", pass,
         "mean nmse " + std::to_string(rep.metrics.at("mean_nmse")) +
             ", ideal nmse " +
             std::to_string(rep_ideal.metrics.at("mean_nmse")) + ", " +
             std::to_string(elapsed) + " s");
}

// 9. converter round trip and monotonicity for every 6b code
void criterion_converters() {
  DacConfig dac;
  AdcConfig adc;
  bool round_trip = true;
  for (int code = -32; code <= 31; ++code) {
    const double v = dac_decode({code, dac.bits}, dac);
    if (adc_quantize(v, adc).value != code) round_trip = false;
  }
  bool monotone = true;
  int prev = adc.min_code();
  for (int i = -500; i <= 500; ++i) {
    const int c = adc_quantize(i * 8e-4, adc).value;
    if (c < prev) monotone = false;
    prev = c;
  }
  report(9, "converter round trip and monotonicity", round_trip && monotone,
         std::string("round trip ") + (round_trip ? "ok" : "broken") +
             ", monotone " + (monotone ? "ok" : "broken"));
}

}  // namespace

int main() {
  criterion_recurrence_equivalence();
  criterion_residual_charge();
  criterion_noise_steady_state();
  criterion_noise_monte_carlo();
  criterion_calibration();
  criterion_matched_filter();
  criterion_compression_counters();
  criterion_sgd_offload();
  criterion_converters();

  if (g_failures == 0)
    std::printf("acceptance: all 9 criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
