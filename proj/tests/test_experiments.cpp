#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "scmac/csv.hpp"
#include "scmac/experiments.hpp"
#include "scmac/synth.hpp"

using namespace scmac;

namespace {

Pipeline default_pipe() { return Pipeline{}; }

std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("scmac_test_" + tag);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("orthonormal: ideal mode is an exact identity") {
  OrthonormalOptions opt;
  opt.ideal = true;
  const ExperimentReport rep =
      run_orthonormal(default_pipe(), opt, 0, {});
  CHECK(rep.metrics.at("mse_uncalibrated") <= 1e-24);
}

TEST_CASE("orthonormal: defaults select the diagonal, calibration helps") {
  OrthonormalOptions opt;
  const ExperimentReport rep =
      run_orthonormal(default_pipe(), opt, 0, {});
  CHECK(rep.metrics.at("argmax_correct") == 8.0);
  CHECK(rep.metrics.at("mse_calibrated") <=
        rep.metrics.at("mse_uncalibrated"));
  CHECK(rep.metrics.at("mse_uncalibrated") > 0.0);
}

TEST_CASE("matched filter: variance floors at high SNR") {
  Pipeline pipe = default_pipe();
  pipe.noise.enabled = true;
  pipe.noise.rng_seed = 42;
  MatchedFilterOptions opt;
  opt.snr_db = {-10.0, 1000.0};  // noisy input vs effectively none
  const ExperimentReport rep = run_matched_filter(pipe, opt, 42, {});
  const double lsb = pipe.adc.lsb;
  CHECK(rep.metrics.at("variance_at_min_snr") >
        rep.metrics.at("variance_at_max_snr"));
  // with the input noise off, only the kTC + quantization floor remains
  CHECK(rep.metrics.at("variance_at_max_snr") <= lsb * lsb / 4.0 + 1e-12);
}

TEST_CASE("matched filter: mean output steady in the unclipped regime") {
  Pipeline pipe = default_pipe();
  pipe.noise.enabled = true;
  pipe.noise.rng_seed = 7;
  MatchedFilterOptions opt;
  opt.snr_db = {6.0, 14.0, 22.0, 30.0};
  const auto out = temp_dir("mf");
  const ExperimentReport rep = run_matched_filter(pipe, opt, 7, out);

  // summary means stay within one lsb of each other
  const Eigen::MatrixXd summary = [&] {
    std::ifstream in(out / "matched_filter_summary.csv");
    std::string header;
    std::getline(in, header);
    Eigen::MatrixXd m(4, 5);
    for (int r = 0; r < 4; ++r) {
      std::string line;
      std::getline(in, line);
      std::stringstream ss(line);
      std::string cell;
      for (int c = 0; c < 5; ++c) {
        std::getline(ss, cell, ',');
        m(r, c) = std::stod(cell);
      }
    }
    return m;
  }();
  const double mean_min = summary.col(3).minCoeff();
  const double mean_max = summary.col(3).maxCoeff();
  CHECK(mean_max - mean_min <= pipe.adc.lsb + 1e-12);

  // trials CSV has one row per (snr, trial) plus the header
  std::ifstream trials(out / "matched_filter_trials.csv");
  int lines = 0;
  std::string line;
  while (std::getline(trials, line)) ++lines;
  CHECK(lines == 1 + 4 * opt.trials);
  std::filesystem::remove_all(out);
}

TEST_CASE("filter scan: constant image with a zero-mean filter is silent") {
  Pipeline pipe = default_pipe();
  const auto dir = temp_dir("fs_const");
  const auto img_path = dir / "const.csv";
  write_matrix_csv(img_path, Eigen::MatrixXd::Constant(16, 16, 0.5));
  FilterScanOptions opt;
  opt.image_csv = img_path.string();
  const ExperimentReport rep = run_filter_scan(pipe, opt, 0, dir);
  const Eigen::MatrixXd map = read_matrix_csv(dir / "activation_analog.csv");
  CHECK(map.cwiseAbs().maxCoeff() <= 1.0);  // within one code of zero
  std::filesystem::remove_all(dir);
}

TEST_CASE("filter scan: delta filter reproduces the quantized image") {
  // pre-quantizer check: descaled analog outputs track the image pixels
  Pipeline pipe = default_pipe();
  const int n = pipe.mac.cycles_per_product;
  const Eigen::MatrixXd img = synth_test_image(12, 12);
  const double x_scale = img.cwiseAbs().maxCoeff() / 31.0;
  const Eigen::MatrixXi img_codes = quantize_matrix(img, x_scale, 6);

  WeightMatrix w{Eigen::MatrixXi::Zero(1, n), 3};
  w.codes(0, 0) = 3;  // single tap
  const double w_scale = 1.0 / 3.0;  // delta of height 1
  const EffectiveMatrix a_eff = effective_matrix(w, pipe.mac);
  const double droop_fix =
      (3.0 * pipe.mac.c_unit / pipe.mac.c2()) / a_eff(0, 0);
  const double descale = pipe.output_descale(w_scale, x_scale);

  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) {
      Eigen::VectorXi x = Eigen::VectorXi::Zero(n);
      x[0] = img_codes(r, c);
      const double y = pipe.analog_outputs(w, x)[0];
      const double recovered = y * droop_fix * descale;
      const double expected = img_codes(r, c) * x_scale;
      CHECK(recovered == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("filter scan: analog beats the 6b accumulator reference") {
  Pipeline pipe = default_pipe();
  FilterScanOptions opt;  // built-in high-dynamic-range pattern
  const ExperimentReport rep = run_filter_scan(pipe, opt, 0, {});
  CHECK(rep.metrics.at("nmse_analog_cal_vs_digital_inf") <
        rep.metrics.at("nmse_digital_acc6_vs_digital_inf"));
  CHECK(rep.metrics.at("nmse_analog_vs_digital_inf") <
        rep.metrics.at("nmse_digital_acc6_vs_digital_inf"));
}

TEST_CASE("filter scan: window overrun") {
  Pipeline pipe = default_pipe();
  const auto dir = temp_dir("fs_small");
  const auto img_path = dir / "small.csv";
  write_matrix_csv(img_path, Eigen::MatrixXd::Zero(4, 4));
  FilterScanOptions opt;
  opt.image_csv = img_path.string();  // 8x8 filter cannot fit
  CHECK_THROWS_AS(run_filter_scan(pipe, opt, 0, {}), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("compression layer: exact conversion counters") {
  Pipeline pipe = default_pipe();
  CompressionLayerOptions opt;
  ConversionCounters counters;
  const ExperimentReport rep =
      run_compression_layer(pipe, opt, 3, {}, &counters);
  CHECK(counters.ad_conversions == 144);
  CHECK(counters.input_samples == 3072);
  CHECK(counters.digitization_rate_divisor == 64);
  CHECK(counters.analog_mac_ops == 144 * 64);
  CHECK(counters.compression_ratio() ==
        doctest::Approx(3072.0 / 144.0).epsilon(1e-15));
  CHECK(rep.metrics.at("compression_ratio") ==
        doctest::Approx(21.3333333333333).epsilon(1e-10));
}

TEST_CASE("compression layer: all-zero image maps to all-zero codes") {
  Pipeline pipe = default_pipe();
  const auto dir = temp_dir("cl_zero");
  const auto img_path = dir / "zeros.csv";
  write_matrix_csv(img_path, Eigen::MatrixXd::Zero(96, 32));
  CompressionLayerOptions opt;
  opt.image_csv = img_path.string();
  const ExperimentReport rep = run_compression_layer(pipe, opt, 3, {});
  CHECK(rep.metrics.at("mean_abs_code") == 0.0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("compression layer: shape mismatch") {
  Pipeline pipe = default_pipe();
  CompressionLayerOptions opt;
  opt.image_size = 30;  // not divisible by the 8-wide stride
  CHECK_THROWS_AS(run_compression_layer(pipe, opt, 0, {}),
                  std::invalid_argument);
}

TEST_CASE("sgd offload: zero learning rate freezes the trajectory") {
  SgdOffloadOptions opt;
  opt.alpha = 0.0;
  opt.steps = 5;
  const ExperimentReport rep = run_sgd_offload(default_pipe(), opt, 0, {});
  CHECK(rep.metrics.at("mean_nmse") == 0.0);
}

TEST_CASE("sgd offload: ideal mode reproduces the reference") {
  SgdOffloadOptions opt;
  opt.ideal = true;
  opt.steps = 20;
  const ExperimentReport rep = run_sgd_offload(default_pipe(), opt, 0, {});
  CHECK(rep.metrics.at("mean_nmse") <= 1e-9);
}

TEST_CASE("sgd offload: defaults stay near the reference trajectory") {
  const ExperimentReport rep =
      run_sgd_offload(default_pipe(), SgdOffloadOptions{}, 0, {});
  CHECK(rep.metrics.at("mean_nmse") <= 0.02);
  CHECK(rep.metrics.at("train_accuracy_reference") >= 0.9);
}

TEST_CASE("sgd offload: divergence is detected") {
  SgdOffloadOptions opt;
  opt.alpha = 1.0;  // wildly unstable on this problem
  CHECK_THROWS_WITH_AS(run_sgd_offload(default_pipe(), opt, 0, {}),
                       doctest::Contains("divergence"), std::runtime_error);
}

TEST_CASE("noise mc: agrees with the analytic curve") {
  Pipeline pipe = default_pipe();
  NoiseMcOptions opt;
  opt.trials = 10000;
  const ExperimentReport rep = run_noise_mc(pipe, opt, 2024, {}, 2);
  CHECK(rep.metrics.at("relative_error") <= 0.05);
  const double analytic = rep.metrics.at("analytic_sigma_final");
  const double mean = rep.metrics.at("mc_mean_final");
  CHECK(std::abs(mean) <= 4.0 * analytic / std::sqrt(10000.0));
  // thread count must not change the numbers
  const ExperimentReport rep1 = run_noise_mc(pipe, opt, 2024, {}, 1);
  CHECK(rep1.metrics.at("mc_sigma_final") ==
        rep.metrics.at("mc_sigma_final"));
}

TEST_CASE("calibration sweep: error grows past the physical row count") {
  Pipeline pipe = default_pipe();
  CalibrationSweepOptions opt;
  const ExperimentReport rep = run_calibration_sweep(pipe, opt, 0, {});
  CHECK(rep.metrics.at("nmse_at_min_m") < rep.metrics.at("nmse_at_max_m"));
  CHECK(rep.metrics.at("demo_corrected_error") <=
        rep.metrics.at("demo_uncorrected_error"));
}

TEST_CASE("experiment registry is stable and complete") {
  const auto& reg = list_experiments();
  REQUIRE(reg.size() == 7);
  CHECK(reg[0].name == "orthonormal");
  CHECK(reg[1].name == "matched-filter");
  CHECK(reg[2].name == "filter-scan");
  CHECK(reg[3].name == "compression-layer");
  CHECK(reg[4].name == "sgd-offload");
  CHECK(reg[5].name == "noise-mc");
  CHECK(reg[6].name == "calibration-sweep");
}
