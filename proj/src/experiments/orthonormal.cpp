// Orthonormal-row product characterization: drive each basis row through
// the pipeline as the input and check how close the response grid lands to
// the identity, with and without factorization correction.

#include <stdexcept>

#include "common.hpp"
#include "scmac/csv.hpp"
#include "scmac/experiments.hpp"
#include "scmac/synth.hpp"

namespace scmac {

namespace {

// Least-squares optimal scalar aligning grid with the identity.
double identity_fit_scale(const Eigen::MatrixXd& grid) {
  const double denom = grid.squaredNorm();
  return denom > 0.0 ? grid.trace() / denom : 0.0;
}

double identity_mse(const Eigen::MatrixXd& grid) {
  const Eigen::MatrixXd ideal =
      Eigen::MatrixXd::Identity(grid.rows(), grid.cols());
  const double g = identity_fit_scale(grid);
  return (g * grid - ideal).squaredNorm() / double(grid.size());
}

}  // namespace

ExperimentReport run_orthonormal(const Pipeline& pipe,
                                 const OrthonormalOptions& opt,
                                 std::uint64_t seed,
                                 const std::filesystem::path& out_dir) {
  pipe.validate();
  const int n = pipe.mac.cycles_per_product;
  const int m = opt.rows;
  if (m < 1 || m > n)
    throw std::invalid_argument("orthonormal: rows must be in [1, cycles]");

  const Eigen::MatrixXd basis = dct_basis(n).topRows(m);

  ExperimentReport rep;
  rep.name = "orthonormal";
  rep.rng_seed = seed;

  if (opt.ideal) {
    // infinite resolution, no droop: the grid is the exact Gram matrix
    const Eigen::MatrixXd grid = basis * basis.transpose();
    rep.metrics["mse_uncalibrated"] = identity_mse(grid);
    rep.metrics["mse_calibrated"] = identity_mse(grid);
    rep.metrics["argmax_correct"] = double(m);
    if (detail::want_artifacts(out_dir)) {
      std::filesystem::create_directories(out_dir);
      write_matrix_csv(out_dir / "response_grid.csv", grid);
      rep.artifacts.push_back("response_grid.csv");
    }
    return rep;
  }

  const double w_scale =
      detail::full_range_step(basis.cwiseAbs().maxCoeff(), 3);
  const double x_scale =
      detail::full_range_step(basis.cwiseAbs().maxCoeff(), pipe.dac.bits);
  const WeightMatrix w{quantize_matrix(basis, w_scale, 3), 3};

  // grid(:, i) = pipeline response to x = basis row i
  Eigen::MatrixXd grid_codes(m, m);
  Eigen::MatrixXd grid_volts(m, m);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXi x_codes =
        quantize_vector(basis.row(i), x_scale, pipe.dac.bits);
    const Eigen::VectorXi y = pipe.multiply(w, x_codes, std::uint64_t(i));
    for (int j = 0; j < m; ++j) {
      grid_codes(j, i) = double(y[j]);
      grid_volts(j, i) = y[j] * pipe.adc.lsb;
    }
  }

  int argmax_correct = 0;
  for (int i = 0; i < m; ++i) {
    Eigen::Index best;
    grid_volts.col(i).maxCoeff(&best);
    if (int(best) == i) ++argmax_correct;
  }

  const double mse_uncal = identity_mse(grid_volts);
  rep.metrics["mse_uncalibrated"] = mse_uncal;
  rep.metrics["argmax_correct"] = double(argmax_correct);

  Eigen::MatrixXd grid_cal;
  if (opt.with_calibration) {
    // correct droop against the programmed-code ideal-gain target
    const Eigen::MatrixXd target =
        w.codes.cast<double>() * (pipe.mac.c_unit / pipe.mac.c2());
    const EffectiveMatrix actual = effective_matrix(w, pipe.mac);
    const CalibrationResult cal =
        solve_correction(target, actual, FeasibleSet::unconstrained());
    grid_cal = cal.b * grid_volts;
    rep.metrics["mse_calibrated"] = identity_mse(grid_cal);
    rep.metrics["calibration_residual"] = cal.residual_frobenius;
  }

  if (detail::want_artifacts(out_dir)) {
    std::filesystem::create_directories(out_dir);
    write_matrix_csv(out_dir / "response_grid_codes.csv", grid_codes);
    rep.artifacts.push_back("response_grid_codes.csv");
    const double g = identity_fit_scale(grid_volts);
    write_matrix_csv(out_dir / "response_grid_normalized.csv", g * grid_volts);
    rep.artifacts.push_back("response_grid_normalized.csv");
    if (opt.with_calibration) {
      const double gc = identity_fit_scale(grid_cal);
      write_matrix_csv(out_dir / "response_grid_calibrated.csv",
                       gc * grid_cal);
      rep.artifacts.push_back("response_grid_calibrated.csv");
    }
  }
  return rep;
}

}  // namespace scmac
