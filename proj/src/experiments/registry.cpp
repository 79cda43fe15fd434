#include "scmac/experiments.hpp"

namespace scmac {

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> registry = {
      {"orthonormal",
       "orthonormal-row response grid, MSE vs identity, with calibration"},
      {"matched-filter",
       "chirp matched filter: output mean/variance across input SNR"},
      {"filter-scan",
       "filter swept over an image vs digital fixed-point references"},
      {"compression-layer",
       "compressing classifier front layer with A/D conversion counters"},
      {"sgd-offload",
       "gradient offload through the pipeline vs double-precision SGD"},
      {"noise-mc",
       "Monte Carlo noise transients vs analytic RMS accumulation"},
      {"calibration-sweep",
       "reconstruction error vs corrected rows and the matrix triple"},
  };
  return registry;
}

}  // namespace scmac
