// SGD gradient offload: a linear multi-class least-squares classifier whose
// per-step score products W x_s run through the quantized analog pipeline.
// The simulated trajectory is compared against a double-precision reference
// trajectory step by step.

#include <cmath>
#include <stdexcept>
#include <string>

#include "common.hpp"
#include "scmac/csv.hpp"
#include "scmac/experiments.hpp"
#include "scmac/synth.hpp"

namespace scmac {

namespace {

// scores S (classes x samples) through the pipeline for the current weights
Eigen::MatrixXd simulated_scores(const Pipeline& pipe,
                                 const Eigen::MatrixXd& weights,
                                 const Eigen::MatrixXi& x_codes,
                                 double x_scale, std::uint64_t step_trial) {
  const int classes = int(weights.rows());
  const int samples = int(x_codes.rows());

  const double w_max = weights.cwiseAbs().maxCoeff();
  if (w_max == 0.0) return Eigen::MatrixXd::Zero(classes, samples);

  const double w_scale = detail::full_range_step(w_max, 3);
  const WeightMatrix w{quantize_matrix(weights, w_scale, 3), 3};

  // droop correction toward the programmed-code target, in volt units
  const Eigen::MatrixXd target =
      w.codes.cast<double>() * (pipe.mac.c_unit / pipe.mac.c2());
  const EffectiveMatrix actual = effective_matrix(w, pipe.mac);
  const Eigen::MatrixXd b =
      solve_correction(target, actual, FeasibleSet::unconstrained()).b;

  const double descale = pipe.output_descale(w_scale, x_scale);

  Eigen::MatrixXd scores(classes, samples);
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXi xc = x_codes.row(s);
    const Eigen::VectorXi yc = pipe.multiply(w, xc, step_trial + s);
    Eigen::VectorXd y_volts(classes);
    for (int j = 0; j < classes; ++j) y_volts[j] = yc[j] * pipe.adc.lsb;
    scores.col(s) = descale * (b * y_volts);
  }
  return scores;
}

}  // namespace

ExperimentReport run_sgd_offload(const Pipeline& pipe,
                                 const SgdOffloadOptions& opt,
                                 std::uint64_t seed,
                                 const std::filesystem::path& out_dir) {
  pipe.validate();
  if (opt.steps < 1)
    throw std::invalid_argument("sgd_offload: steps must be >= 1");
  if (opt.features != pipe.mac.cycles_per_product)
    throw std::invalid_argument(
        "sgd_offload: features must equal cycles_per_product");

  const ClassificationProblem problem = make_classification_problem(
      opt.features, opt.classes, opt.samples_per_class, opt.feature_scale,
      opt.spread, opt.problem_seed);
  const Eigen::MatrixXd& x = problem.samples;           // samples x features
  const Eigen::MatrixXd t = problem.targets.transpose();  // classes x samples
  const int samples = int(x.rows());

  const double x_scale =
      detail::full_range_step(x.cwiseAbs().maxCoeff(), pipe.dac.bits);
  const Eigen::MatrixXi x_codes = quantize_matrix(x, x_scale, pipe.dac.bits);

  Eigen::MatrixXd w_ref = Eigen::MatrixXd::Zero(opt.classes, opt.features);
  Eigen::MatrixXd w_sim = w_ref;

  ExperimentReport rep;
  rep.name = "sgd-offload";
  rep.rng_seed = seed;

  std::unique_ptr<CsvWriter> traj;
  if (detail::want_artifacts(out_dir)) {
    std::filesystem::create_directories(out_dir);
    traj = std::make_unique<CsvWriter>(
        out_dir / "sgd_trajectory.csv",
        std::vector<std::string>{"step", "nmse", "theta_ref_norm",
                                 "theta_sim_norm"});
    rep.artifacts.push_back("sgd_trajectory.csv");
  }

  double nmse_sum = 0.0;
  double nmse_final = 0.0;
  for (int step = 1; step <= opt.steps; ++step) {
    // reference: exact arithmetic throughout
    const Eigen::MatrixXd g_ref =
        (w_ref * x.transpose() - t) * x / double(samples);
    w_ref -= opt.alpha * g_ref;

    // simulated: scores via the chip, gradient assembled digitally
    Eigen::MatrixXd s_sim;
    if (opt.ideal) {
      s_sim = w_sim * x.transpose();
    } else {
      s_sim = simulated_scores(pipe, w_sim, x_codes, x_scale,
                               std::uint64_t(step) * 1000003ULL);
    }
    const Eigen::MatrixXd g_sim = (s_sim - t) * x / double(samples);
    w_sim -= opt.alpha * g_sim;

    if (!w_sim.allFinite())
      throw std::runtime_error("sgd_offload: divergence at step " +
                               std::to_string(step) +
                               " (non-finite parameters)");

    const double diff = (w_sim - w_ref).squaredNorm();
    const double ref_norm = w_ref.squaredNorm();
    const double nmse = diff == 0.0 ? 0.0 : diff / ref_norm;
    nmse_sum += nmse;
    nmse_final = nmse;
    if (traj)
      traj->row({double(step), nmse, std::sqrt(ref_norm),
                 std::sqrt(w_sim.squaredNorm())});
  }

  const double mean_nmse = nmse_sum / opt.steps;
  rep.metrics["mean_nmse"] = mean_nmse;
  rep.metrics["final_nmse"] = nmse_final;
  rep.metrics["alpha"] = opt.alpha;
  rep.metrics["steps"] = double(opt.steps);

  // training accuracy of both final solutions
  auto accuracy = [&](const Eigen::MatrixXd& w) {
    int correct = 0;
    for (int s = 0; s < samples; ++s) {
      Eigen::Index pred, truth;
      (w * x.row(s).transpose()).maxCoeff(&pred);
      t.col(s).maxCoeff(&truth);
      if (pred == truth) ++correct;
    }
    return double(correct) / samples;
  };
  rep.metrics["train_accuracy_reference"] = accuracy(w_ref);
  rep.metrics["train_accuracy_simulated"] = accuracy(w_sim);

  if (detail::want_artifacts(out_dir)) {
    write_matrix_csv(out_dir / "theta_reference.csv", w_ref);
    write_matrix_csv(out_dir / "theta_simulated.csv", w_sim);
    rep.artifacts.push_back("theta_reference.csv");
    rep.artifacts.push_back("theta_simulated.csv");
  }
  return rep;
}

}  // namespace scmac
