// Run configuration: defaults, strict JSON parsing (unknown keys rejected),
// and dispatch. Precedence is flags > file > defaults; the CLI applies flag
// overrides after from_json.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "scmac/experiments.hpp"
#include "scmac/pipeline.hpp"

namespace scmac {

// Configuration problems exit with status 2 at the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  int threads = 1;

  Pipeline pipeline;

  OrthonormalOptions orthonormal;
  MatchedFilterOptions matched_filter;
  FilterScanOptions filter_scan;
  CompressionLayerOptions compression_layer;
  SgdOffloadOptions sgd_offload;
  NoiseMcOptions noise_mc;
  CalibrationSweepOptions calibration_sweep;

  static RunConfig defaults();
  static RunConfig from_json(const nlohmann::json& j);  // throws ConfigError
  static RunConfig from_file(const std::filesystem::path& path);

  nlohmann::json to_json() const;  // fully resolved snapshot
  void validate() const;           // throws ConfigError
};

// Dispatches to the named experiment, writes artifacts and report.json
// under cfg.output_dir, and returns the report.
ExperimentReport run_experiment(const RunConfig& cfg);

}  // namespace scmac
