// Image filter scan: one filter window per inner product, swept across the
// image. Emits the analog-pipeline map and two digital fixed-point
// references (infinite accumulator, 6b accumulator) in common code units.

#include <cmath>
#include <stdexcept>

#include "common.hpp"
#include "scmac/csv.hpp"
#include "scmac/experiments.hpp"
#include "scmac/synth.hpp"

namespace scmac {

namespace {

double nmse(const Eigen::MatrixXd& x, const Eigen::MatrixXd& ref) {
  const double denom = ref.squaredNorm();
  return denom > 0.0 ? (x - ref).squaredNorm() / denom
                     : (x.squaredNorm() > 0.0 ? std::numeric_limits<double>::infinity()
                                              : 0.0);
}

}  // namespace

ExperimentReport run_filter_scan(const Pipeline& pipe,
                                 const FilterScanOptions& opt,
                                 std::uint64_t seed,
                                 const std::filesystem::path& out_dir) {
  pipe.validate();
  if (opt.stride < 1)
    throw std::invalid_argument("filter_scan: stride must be >= 1");

  const Eigen::MatrixXd image = opt.image_csv.empty()
                                    ? synth_test_image(40, 40)
                                    : read_matrix_csv(opt.image_csv);
  const Eigen::MatrixXd filter =
      opt.filter_csv.empty() ? gabor_filter(8, 8, GaborParams{})
                             : read_matrix_csv(opt.filter_csv);

  const int fh = int(filter.rows()), fw = int(filter.cols());
  const int n = pipe.mac.cycles_per_product;
  if (fh * fw > n)
    throw std::invalid_argument(
        "filter_scan: filter taps exceed cycles_per_product");
  if (fh > image.rows() || fw > image.cols())
    throw std::invalid_argument("filter_scan: window overruns the image");

  const int oh = (int(image.rows()) - fh) / opt.stride + 1;
  const int ow = (int(image.cols()) - fw) / opt.stride + 1;

  // 3b weight row, zero-padded to the full cycle count
  const double w_scale =
      detail::full_range_step(filter.cwiseAbs().maxCoeff(), 3);
  WeightMatrix w;
  w.codes = Eigen::MatrixXi::Zero(1, n);
  w.bits = 3;
  Eigen::VectorXi filter_codes(fh * fw);
  {
    const Eigen::MatrixXi fq = quantize_matrix(filter, w_scale, 3);
    int idx = 0;
    for (int r = 0; r < fh; ++r)
      for (int c = 0; c < fw; ++c, ++idx) {
        w.codes(0, idx) = fq(r, c);
        filter_codes[idx] = fq(r, c);
      }
  }

  const double x_scale =
      detail::full_range_step(image.cwiseAbs().maxCoeff(), pipe.dac.bits);
  const Eigen::MatrixXi image_codes =
      quantize_matrix(image, x_scale, pipe.dac.bits);

  // ideal per-product gain from codes to volts
  const double code_gain = (pipe.mac.c_unit / pipe.mac.c2()) * pipe.dac.step();

  // scalar droop correction for the single weight row
  const EffectiveMatrix a_eff = effective_matrix(w, pipe.mac);
  const Eigen::VectorXd target =
      w.codes.cast<double>().row(0) * (pipe.mac.c_unit / pipe.mac.c2());
  const Eigen::VectorXd actual = a_eff.row(0);
  const double b_scalar = actual.squaredNorm() > 0.0
                              ? target.dot(actual) / actual.squaredNorm()
                              : 1.0;

  Eigen::MatrixXd map_analog(oh, ow);
  Eigen::MatrixXd map_digital_inf(oh, ow), map_digital_acc6(oh, ow);

  Eigen::VectorXi x_codes(n);
  std::uint64_t trial = 0;
  for (int r = 0; r < oh; ++r) {
    for (int c = 0; c < ow; ++c, ++trial) {
      x_codes.setZero();
      int idx = 0;
      for (int u = 0; u < fh; ++u)
        for (int v = 0; v < fw; ++v, ++idx)
          x_codes[idx] = image_codes(r * opt.stride + u, c * opt.stride + v);

      const int y_code = pipe.multiply(w, x_codes, trial)[0];
      map_analog(r, c) = double(y_code);

      // digital 6b/3b/6b, infinite accumulator: exact integer sum, one
      // output quantization in the same volt scale as the analog path
      long long acc_exact = 0;
      for (int i = 0; i < fh * fw; ++i)
        acc_exact += (long long)filter_codes[i] * x_codes[i];
      map_digital_inf(r, c) =
          double(adc_quantize(double(acc_exact) * code_gain, pipe.adc).value);

      // digital 6b/3b/6b with a 6b accumulator: the running sum is held at
      // output resolution, so sub-lsb increments are lost each cycle
      int acc6 = 0;
      for (int i = 0; i < fh * fw; ++i) {
        const double inc = double(filter_codes[i]) * x_codes[i] * code_gain;
        const int step = quantize_to_code(inc, pipe.adc.lsb, pipe.adc.bits);
        acc6 = std::min(pipe.adc.max_code(),
                        std::max(pipe.adc.min_code(), acc6 + step));
      }
      map_digital_acc6(r, c) = double(acc6);
    }
  }

  // corrected analog in code units for comparable NMSE
  Eigen::MatrixXd map_analog_cal_codes = b_scalar * map_analog;

  ExperimentReport rep;
  rep.name = "filter-scan";
  rep.rng_seed = seed;
  rep.metrics["windows"] = double(oh) * ow;
  rep.metrics["nmse_analog_vs_digital_inf"] =
      nmse(map_analog, map_digital_inf);
  rep.metrics["nmse_analog_cal_vs_digital_inf"] =
      nmse(map_analog_cal_codes, map_digital_inf);
  rep.metrics["nmse_digital_acc6_vs_digital_inf"] =
      nmse(map_digital_acc6, map_digital_inf);
  rep.metrics["correction_scalar"] = b_scalar;

  if (detail::want_artifacts(out_dir)) {
    std::filesystem::create_directories(out_dir);
    write_matrix_csv(out_dir / "image.csv", image);
    write_matrix_csv(out_dir / "filter.csv", filter);
    write_matrix_csv(out_dir / "activation_analog.csv", map_analog);
    write_matrix_csv(out_dir / "activation_analog_calibrated.csv",
                     map_analog_cal_codes);
    write_matrix_csv(out_dir / "activation_digital_inf.csv", map_digital_inf);
    write_matrix_csv(out_dir / "activation_digital_acc6.csv",
                     map_digital_acc6);
    rep.artifacts = {"image.csv",
                     "filter.csv",
                     "activation_analog.csv",
                     "activation_analog_calibrated.csv",
                     "activation_digital_inf.csv",
                     "activation_digital_acc6.csv"};
  }
  return rep;
}

}  // namespace scmac
