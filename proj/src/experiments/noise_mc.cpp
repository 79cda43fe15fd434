// Monte Carlo noise transients at the worst-case weight setting, compared
// against the analytic RMS accumulation curve.

#include <cmath>

#include "common.hpp"
#include "scmac/csv.hpp"
#include "scmac/experiments.hpp"

namespace scmac {

ExperimentReport run_noise_mc(const Pipeline& pipe, const NoiseMcOptions& opt,
                              std::uint64_t seed,
                              const std::filesystem::path& out_dir,
                              int threads) {
  pipe.validate();
  if (opt.trials < 2)
    throw std::invalid_argument("noise_mc: need at least 2 trials");

  const int n = pipe.mac.cycles_per_product;

  // worst case: every cycle samples the full C_s,tot
  Eigen::VectorXi row = Eigen::VectorXi::Constant(n, -pipe.mac.weight_levels);
  const Eigen::VectorXd v_in = Eigen::VectorXd::Zero(n);

  NoiseSpec spec;
  spec.enabled = true;
  spec.rng_seed = seed;
  spec.trials = opt.trials;

  Eigen::MatrixXd traces;  // emitted subset only
  const int emit = std::min(opt.traces_to_emit, opt.trials);
  traces.resize(emit, n + 1);

  // per-cycle running sums for the Monte Carlo sigma profile
  std::vector<double> sum(n + 1, 0.0), sum_sq(n + 1, 0.0);
  std::vector<double> finals(opt.trials);
  std::mutex acc_mutex;

  detail::parallel_for(opt.trials, threads, [&](long long trial) {
    const MacTrace tr =
        noisy_mac_inner_product(v_in, row, pipe.mac, spec, trial);
    finals[std::size_t(trial)] = tr[n];
    {
      std::lock_guard<std::mutex> lock(acc_mutex);
      for (int i = 0; i <= n; ++i) {
        sum[std::size_t(i)] += tr[i];
        sum_sq[std::size_t(i)] += tr[i] * tr[i];
      }
    }
    if (trial < emit) traces.row(trial) = tr.transpose();
  });

  auto stddev_at = [&](int i) {
    const double mean = sum[std::size_t(i)] / opt.trials;
    return std::sqrt(std::max(
        0.0, (sum_sq[std::size_t(i)] - opt.trials * mean * mean) /
                 (opt.trials - 1)));
  };

  const double mc_sigma = stddev_at(n);
  const double analytic = sigma_after_cycles(n, pipe.mac.cs_total(), pipe.mac);
  double mean_final = 0.0;
  for (double f : finals) mean_final += f;
  mean_final /= opt.trials;

  ExperimentReport rep;
  rep.name = "noise-mc";
  rep.rng_seed = seed;
  rep.metrics["trials"] = double(opt.trials);
  rep.metrics["mc_sigma_final"] = mc_sigma;
  rep.metrics["analytic_sigma_final"] = analytic;
  rep.metrics["relative_error"] = std::abs(mc_sigma - analytic) / analytic;
  rep.metrics["mc_mean_final"] = mean_final;
  rep.metrics["sigma_steady_state"] = sigma_steady_state(pipe.mac);

  if (detail::want_artifacts(out_dir)) {
    std::filesystem::create_directories(out_dir);
    CsvWriter traces_csv(out_dir / "noise_traces.csv",
                         {"trial", "cycle", "v_c2"});
    for (int tr = 0; tr < emit; ++tr)
      for (int i = 0; i <= n; ++i)
        traces_csv.row({double(tr), double(i), traces(tr, i)});
    rep.artifacts.push_back("noise_traces.csv");

    CsvWriter sigma_csv(out_dir / "noise_sigma.csv",
                        {"cycle", "sigma_mc", "sigma_analytic"});
    for (int i = 0; i <= n; ++i)
      sigma_csv.row({double(i), i == 0 ? 0.0 : stddev_at(i),
                     i == 0 ? 0.0
                            : sigma_after_cycles(i - 1, pipe.mac.cs_total(),
                                                 pipe.mac)});
    rep.artifacts.push_back("noise_sigma.csv");
  }
  return rep;
}

}  // namespace scmac
