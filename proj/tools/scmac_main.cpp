// Command-line front end: run experiments, list them, print the resolved
// configuration. Exit codes: 0 success, 1 experiment failure, 2 config
// error (bad file, unknown keys, unknown experiment, bad flags).

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scmac/run_config.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::json err = {{"error", kind}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<std::string> snr_db;
  std::optional<int> trials;
  std::optional<int> steps;
  std::optional<double> alpha;
  std::optional<double> c2_ratio;
  std::optional<double> temperature;
  std::optional<int> cycles;
  bool ideal = false;
  bool noise_on = false;
  bool noise_off = false;

  void apply(scmac::RunConfig& cfg) const {
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.output_dir = *out_dir;
    if (threads) cfg.threads = *threads;
    if (snr_db) cfg.matched_filter.snr_db = parse_double_list(*snr_db);
    if (trials) {
      cfg.matched_filter.trials = *trials;
      cfg.noise_mc.trials = *trials;
    }
    if (steps) cfg.sgd_offload.steps = *steps;
    if (alpha) cfg.sgd_offload.alpha = *alpha;
    if (c2_ratio) cfg.pipeline.mac.c2_ratio = *c2_ratio;
    if (temperature) cfg.pipeline.mac.temperature = *temperature;
    if (cycles) {
      cfg.pipeline.mac.cycles_per_product = *cycles;
      cfg.matched_filter.chirp_len = *cycles;
      cfg.sgd_offload.features = *cycles;
      cfg.calibration_sweep.size = *cycles;
    }
    if (ideal) {
      cfg.orthonormal.ideal = true;
      cfg.sgd_offload.ideal = true;
    }
    if (noise_on) cfg.pipeline.noise.enabled = true;
    if (noise_off) cfg.pipeline.noise.enabled = false;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"behavioral switched-capacitor matrix-multiplier simulator"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "run one experiment");
  std::string experiment;
  std::string config_path;
  Overrides ov;
  run->add_option("experiment", experiment,
                  "experiment name (see list-experiments)");
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--seed", ov.seed, "RNG seed");
  run->add_option("--out", ov.out_dir, "output directory");
  run->add_option("--threads", ov.threads, "worker threads for trials");
  run->add_option("--snr-db", ov.snr_db, "comma-separated SNR list [dB]");
  run->add_option("--trials", ov.trials, "trial count");
  run->add_option("--steps", ov.steps, "SGD steps");
  run->add_option("--alpha", ov.alpha, "SGD learning rate");
  run->add_option("--c2-ratio", ov.c2_ratio, "C2 / C_s,tot");
  run->add_option("--temperature", ov.temperature, "temperature [K]");
  run->add_option("--cycles", ov.cycles, "MAC cycles per inner product");
  run->add_flag("--ideal", ov.ideal, "ideal mode (no droop/quantization)");
  run->add_flag("--noise", ov.noise_on, "enable kT/C noise");
  run->add_flag("--no-noise", ov.noise_off, "disable kT/C noise");

  // --- list-experiments ---
  auto* list = app.add_subcommand("list-experiments",
                                  "print experiment names and descriptions");

  // --- print-config ---
  auto* print_cfg = app.add_subcommand(
      "print-config", "print the fully resolved configuration as JSON");
  std::string print_config_path;
  print_cfg->add_option("--config", print_config_path, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    print_error("cli", e.what());
    return 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& info : scmac::list_experiments())
        std::cout << info.name << "  -  " << info.description << "\n";
      return 0;
    }

    if (print_cfg->parsed()) {
      scmac::RunConfig cfg = print_config_path.empty()
                                 ? scmac::RunConfig::defaults()
                                 : scmac::RunConfig::from_file(print_config_path);
      std::cout << cfg.to_json().dump(2) << "\n";
      return 0;
    }

    // run
    scmac::RunConfig cfg = config_path.empty()
                               ? scmac::RunConfig::defaults()
                               : scmac::RunConfig::from_file(config_path);
    if (!experiment.empty()) cfg.experiment = experiment;
    ov.apply(cfg);
    if (cfg.experiment.empty())
      throw scmac::ConfigError(
          "config: no experiment given (positional argument or config file)");

    const scmac::ExperimentReport rep = scmac::run_experiment(cfg);
    std::cout << "experiment " << rep.name << " done";
    if (!cfg.output_dir.empty())
      std::cout << "; artifacts in " << cfg.output_dir.string();
    std::cout << "\n";
    for (const auto& [k, v] : rep.metrics)
      std::cout << "  " << k << " = " << v << "\n";
    return 0;
  } catch (const scmac::ConfigError& e) {
    print_error("config", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("experiment", e.what());
    return 1;
  }
}
