// Desk-scale experiment suite driven through the simulated pipeline:
// orthonormal product characterization, matched-filter SNR sweep, image
// filter scan, compressing classifier front layer, SGD gradient offload,
// Monte Carlo noise transients, and the calibration sweep.
//
// Every experiment is deterministic for a fixed (config, seed) and writes
// its figure-equivalent datasets as CSV plus a report.json when given an
// output directory (pass an empty path to skip artifacts).

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "scmac/calibration.hpp"
#include "scmac/pipeline.hpp"

namespace scmac {

struct ExperimentReport {
  std::string name;
  nlohmann::json config;  // fully resolved snapshot
  std::map<std::string, double> metrics;
  std::vector<std::string> artifacts;  // paths relative to the output dir
  std::uint64_t rng_seed = 0;
};

struct ConversionCounters {
  long long analog_mac_ops = 0;      // MAC cycles executed
  long long ad_conversions = 0;      // one per inner-product output
  long long input_samples = 0;       // direct-digitization baseline
  long long digitization_rate_divisor = 0;  // MAC cycles per conversion

  double compression_ratio() const {
    return ad_conversions == 0 ? 0.0
                               : double(input_samples) / double(ad_conversions);
  }
};

struct SgdState {
  Eigen::VectorXd theta;  // flattened classifier weights
  int step = 0;
  double alpha = 1e-6;
};

// ---- per-experiment options ------------------------------------------

struct OrthonormalOptions {
  int rows = 8;                 // orthonormal rows under test
  bool with_calibration = true;
  bool ideal = false;           // infinite resolution, no droop
};

struct MatchedFilterOptions {
  int chirp_len = 64;
  double f0 = 0.0, f1 = 0.4;     // normalized chirp frequency span
  double amplitude_frac = 0.7;   // of DAC full scale
  std::vector<double> snr_db = {-10.0, -2.0, 6.0, 14.0, 22.0, 30.0};
  int trials = 25;
};

struct FilterScanOptions {
  int stride = 1;
  bool with_calibration = true;
  std::string image_csv;   // empty -> built-in synthetic pattern
  std::string filter_csv;  // empty -> built-in Gabor patch
};

struct CompressionLayerOptions {
  int image_size = 32;  // square, per channel
  int channels = 3;
  int filter_size = 8;  // stride equals filter size (non-overlapping)
  int filters_per_channel = 3;
  std::string image_csv;  // empty -> synthetic; stacked channel planes
};

struct SgdOffloadOptions {
  int steps = 100;
  double alpha = 1e-6;
  bool ideal = false;
  int classes = 8;
  int features = 64;
  int samples_per_class = 8;
  double feature_scale = 250.0;
  double spread = 0.3;
  std::uint64_t problem_seed = 11;  // bundled desk problem; independent of run seed
};

struct NoiseMcOptions {
  int trials = 10000;
  int traces_to_emit = 150;
};

struct CalibrationSweepOptions {
  int size = 64;        // columns / cycle count of the design
  int actual_rows = 8;  // physical output rows the correction works from
  std::vector<int> m_list = {1, 2, 3, 4, 5, 6, 7, 8, 12, 16, 24, 32, 48, 64};
  double demo_c2_ratio = 10.0;  // accentuated droop for the visual triple
};

// ---- experiments -------------------------------------------------------

ExperimentReport run_orthonormal(const Pipeline& pipe,
                                 const OrthonormalOptions& opt,
                                 std::uint64_t seed,
                                 const std::filesystem::path& out_dir);

ExperimentReport run_matched_filter(const Pipeline& pipe,
                                    const MatchedFilterOptions& opt,
                                    std::uint64_t seed,
                                    const std::filesystem::path& out_dir,
                                    int threads = 1);

ExperimentReport run_filter_scan(const Pipeline& pipe,
                                 const FilterScanOptions& opt,
                                 std::uint64_t seed,
                                 const std::filesystem::path& out_dir);

ExperimentReport run_compression_layer(const Pipeline& pipe,
                                       const CompressionLayerOptions& opt,
                                       std::uint64_t seed,
                                       const std::filesystem::path& out_dir,
                                       ConversionCounters* counters = nullptr);

ExperimentReport run_sgd_offload(const Pipeline& pipe,
                                 const SgdOffloadOptions& opt,
                                 std::uint64_t seed,
                                 const std::filesystem::path& out_dir);

ExperimentReport run_noise_mc(const Pipeline& pipe, const NoiseMcOptions& opt,
                              std::uint64_t seed,
                              const std::filesystem::path& out_dir,
                              int threads = 1);

ExperimentReport run_calibration_sweep(const Pipeline& pipe,
                                       const CalibrationSweepOptions& opt,
                                       std::uint64_t seed,
                                       const std::filesystem::path& out_dir);

// ---- registry and report ------------------------------------------------

struct ExperimentInfo {
  std::string name;
  std::string description;
};

// Stable-ordered list of runnable experiment names.
const std::vector<ExperimentInfo>& list_experiments();

// Serializes the report as out_dir/report.json (keys sorted, stable bytes).
void write_report(const ExperimentReport& report,
                  const std::filesystem::path& out_dir);

}  // namespace scmac
