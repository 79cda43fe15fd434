// Compressing front layer: non-overlapping windows, stride equal to the
// filter width, several filters per color channel. Activations are
// digitized once per inner product, so the A/D count and rate drop by
// exact integer ratios relative to direct digitization.

#include <stdexcept>

#include "common.hpp"
#include "scmac/csv.hpp"
#include "scmac/experiments.hpp"
#include "scmac/synth.hpp"

namespace scmac {

ExperimentReport run_compression_layer(const Pipeline& pipe,
                                       const CompressionLayerOptions& opt,
                                       std::uint64_t seed,
                                       const std::filesystem::path& out_dir,
                                       ConversionCounters* counters_out) {
  pipe.validate();
  const int fs = opt.filter_size;
  const int sz = opt.image_size;
  if (fs < 1 || sz < 1 || opt.channels < 1 || opt.filters_per_channel < 1)
    throw std::invalid_argument("compression_layer: bad shape");
  if (sz % fs != 0)
    throw std::invalid_argument(
        "compression_layer: image size must be divisible by the stride");
  if (fs * fs > pipe.mac.cycles_per_product)
    throw std::invalid_argument(
        "compression_layer: filter taps exceed cycles_per_product");

  // image planes: synthetic unless a stacked CSV (channels*size rows) is given
  std::vector<Eigen::MatrixXd> planes;
  if (opt.image_csv.empty()) {
    const auto rgb = synth_rgb_image(sz, sz, derive_seed(seed, 0xC0FFEE));
    for (int ch = 0; ch < opt.channels; ++ch)
      planes.push_back(rgb[std::size_t(ch % 3)]);
  } else {
    const Eigen::MatrixXd stacked = read_matrix_csv(opt.image_csv);
    if (stacked.rows() != opt.channels * sz || stacked.cols() != sz)
      throw std::invalid_argument(
          "compression_layer: stacked image must be (channels*size) x size");
    for (int ch = 0; ch < opt.channels; ++ch)
      planes.push_back(stacked.middleRows(ch * sz, sz));
  }

  // deterministic Gabor bank: one orientation per filter index
  std::vector<Eigen::MatrixXd> filters;
  for (int f = 0; f < opt.filters_per_channel; ++f) {
    GaborParams p;
    p.theta = f * 3.14159265358979323846 / opt.filters_per_channel;
    p.lambda = 4.0 + f;
    filters.push_back(gabor_filter(fs, fs, p));
  }

  const int positions = sz / fs;
  const int n = pipe.mac.cycles_per_product;

  double image_max = 0.0;
  for (const auto& pl : planes)
    image_max = std::max(image_max, pl.cwiseAbs().maxCoeff());
  const double x_scale = detail::full_range_step(image_max, pipe.dac.bits);

  ConversionCounters counters;
  counters.input_samples = (long long)sz * sz * opt.channels;
  counters.digitization_rate_divisor = n;

  ExperimentReport rep;
  rep.name = "compression-layer";
  rep.rng_seed = seed;

  std::filesystem::path act_path;
  std::unique_ptr<CsvWriter> act;
  if (detail::want_artifacts(out_dir)) {
    std::filesystem::create_directories(out_dir);
    act = std::make_unique<CsvWriter>(
        out_dir / "activations.csv",
        std::vector<std::string>{"channel", "filter", "row", "col", "code",
                                 "volts"});
    rep.artifacts.push_back("activations.csv");
  }

  double sum_abs_code = 0.0;
  std::uint64_t trial = 0;
  for (int ch = 0; ch < opt.channels; ++ch) {
    const Eigen::MatrixXi plane_codes =
        quantize_matrix(planes[std::size_t(ch)], x_scale, pipe.dac.bits);
    for (int f = 0; f < opt.filters_per_channel; ++f) {
      const Eigen::MatrixXd& filt = filters[std::size_t(f)];
      const double w_scale =
          detail::full_range_step(filt.cwiseAbs().maxCoeff(), 3);
      WeightMatrix w;
      w.codes = Eigen::MatrixXi::Zero(1, n);
      w.bits = 3;
      const Eigen::MatrixXi fq = quantize_matrix(filt, w_scale, 3);
      for (int u = 0; u < fs; ++u)
        for (int v = 0; v < fs; ++v) w.codes(0, u * fs + v) = fq(u, v);

      for (int r = 0; r < positions; ++r)
        for (int c = 0; c < positions; ++c, ++trial) {
          Eigen::VectorXi x_codes = Eigen::VectorXi::Zero(n);
          for (int u = 0; u < fs; ++u)
            for (int v = 0; v < fs; ++v)
              x_codes[u * fs + v] = plane_codes(r * fs + u, c * fs + v);
          const int code = pipe.multiply(w, x_codes, trial)[0];
          counters.ad_conversions += 1;
          counters.analog_mac_ops += n;
          sum_abs_code += std::abs(code);
          if (act)
            act->row({double(ch), double(f), double(r), double(c),
                      double(code), code * pipe.adc.lsb});
        }
    }
  }

  rep.metrics["ad_conversions"] = double(counters.ad_conversions);
  rep.metrics["input_samples"] = double(counters.input_samples);
  rep.metrics["compression_ratio"] = counters.compression_ratio();
  rep.metrics["digitization_rate_divisor"] =
      double(counters.digitization_rate_divisor);
  rep.metrics["analog_mac_ops"] = double(counters.analog_mac_ops);
  rep.metrics["mean_abs_code"] =
      counters.ad_conversions > 0
          ? sum_abs_code / double(counters.ad_conversions)
          : 0.0;

  if (counters_out) *counters_out = counters;
  return rep;
}

}  // namespace scmac
