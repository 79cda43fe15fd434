// Factorization characterization: reconstruction error as a function of the
// number of corrected rows, plus the accentuated ideal/actual/corrected
// matrix triple for rendering.

#include <stdexcept>

#include "common.hpp"
#include "scmac/csv.hpp"
#include "scmac/experiments.hpp"
#include "scmac/synth.hpp"

namespace scmac {

ExperimentReport run_calibration_sweep(const Pipeline& pipe,
                                       const CalibrationSweepOptions& opt,
                                       std::uint64_t seed,
                                       const std::filesystem::path& out_dir) {
  pipe.validate();
  MacConfig cfg = pipe.mac;
  if (opt.size != cfg.cycles_per_product)
    throw std::invalid_argument(
        "calibration_sweep: size must equal cycles_per_product");

  if (opt.actual_rows < 1 || opt.actual_rows > opt.size)
    throw std::invalid_argument(
        "calibration_sweep: actual_rows must be in [1, size]");

  // quantized orthonormal family at the production droop setting; the
  // correction works from actual_rows physical outputs, so reconstruction
  // error grows once the target asks for more rows than the chip provides
  const int max_code = (1 << 2) - 1;
  const Eigen::MatrixXd basis = dct_basis(opt.size);
  const double w_scale = basis.cwiseAbs().maxCoeff() / double(max_code);
  const WeightMatrix w{quantize_matrix(basis, w_scale, 3), 3};
  const Eigen::MatrixXd ideal =
      w.codes.cast<double>() * (cfg.c_unit / cfg.c2());

  const WeightMatrix w_actual{w.codes.topRows(opt.actual_rows), 3};
  const EffectiveMatrix actual = effective_matrix(w_actual, cfg);

  const auto sweep = error_vs_rows_sweep(ideal, actual, opt.m_list);

  // accentuated droop for the visual triple
  MacConfig demo_cfg = cfg;
  demo_cfg.c2_ratio = opt.demo_c2_ratio;
  const MatrixComparison demo = accentuated_matrix_demo(demo_cfg);

  ExperimentReport rep;
  rep.name = "calibration-sweep";
  rep.rng_seed = seed;
  if (!sweep.empty()) {
    rep.metrics["nmse_at_min_m"] = sweep.front().second;
    rep.metrics["nmse_at_max_m"] = sweep.back().second;
  }
  rep.metrics["demo_uncorrected_error"] = (demo.actual - demo.ideal).norm();
  rep.metrics["demo_corrected_error"] = (demo.corrected - demo.ideal).norm();

  if (detail::want_artifacts(out_dir)) {
    std::filesystem::create_directories(out_dir);
    CsvWriter sweep_csv(out_dir / "error_vs_m.csv", {"m", "normalized_mse"});
    for (const auto& [m, nmse] : sweep) sweep_csv.row({double(m), nmse});
    rep.artifacts.push_back("error_vs_m.csv");

    write_matrix_csv(out_dir / "matrix_ideal.csv", demo.ideal);
    write_matrix_csv(out_dir / "matrix_actual.csv", demo.actual);
    write_matrix_csv(out_dir / "matrix_corrected.csv", demo.corrected);
    rep.artifacts.push_back("matrix_ideal.csv");
    rep.artifacts.push_back("matrix_actual.csv");
    rep.artifacts.push_back("matrix_corrected.csv");
  }
  return rep;
}

}  // namespace scmac
