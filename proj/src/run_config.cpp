#include "scmac/run_config.hpp"

#include <fstream>
#include <set>
#include <string>

namespace scmac {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& ctx,
                const std::set<std::string>& allowed) {
  if (!j.is_object())
    throw ConfigError("config: '" + ctx + "' must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key))
      throw ConfigError("config: unknown key '" + ctx + "." + key + "'");
  }
}

template <typename T>
void get_to(const json& j, const char* key, T& out) {
  if (j.contains(key)) {
    try {
      j.at(key).get_to(out);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: bad value for '") + key +
                        "': " + e.what());
    }
  }
}

void parse_mac(const json& j, MacConfig& mac) {
  check_keys(j, "mac",
             {"mode", "dc_gain", "c_unit", "weight_levels", "c2_ratio",
              "cycles_per_product", "temperature"});
  if (j.contains("mode")) {
    const std::string m = j.at("mode").get<std::string>();
    if (m == "passive")
      mac.mode = MacMode::Passive;
    else if (m == "active")
      mac.mode = MacMode::Active;
    else
      throw ConfigError("config: mac.mode must be 'passive' or 'active'");
  }
  get_to(j, "dc_gain", mac.dc_gain);
  get_to(j, "c_unit", mac.c_unit);
  get_to(j, "weight_levels", mac.weight_levels);
  get_to(j, "c2_ratio", mac.c2_ratio);
  get_to(j, "cycles_per_product", mac.cycles_per_product);
  get_to(j, "temperature", mac.temperature);
}

}  // namespace

RunConfig RunConfig::defaults() { return RunConfig{}; }

RunConfig RunConfig::from_json(const json& j) {
  RunConfig cfg;
  check_keys(j, "<root>",
             {"experiment", "seed", "output_dir", "threads", "mac", "dac",
              "adc", "noise", "orthonormal", "matched_filter", "filter_scan",
              "compression_layer", "sgd_offload", "noise_mc",
              "calibration_sweep"});

  get_to(j, "experiment", cfg.experiment);
  get_to(j, "seed", cfg.seed);
  if (j.contains("output_dir"))
    cfg.output_dir = j.at("output_dir").get<std::string>();
  get_to(j, "threads", cfg.threads);

  if (j.contains("mac")) parse_mac(j.at("mac"), cfg.pipeline.mac);

  if (j.contains("dac")) {
    const json& d = j.at("dac");
    check_keys(d, "dac", {"bits", "v_full_scale", "cdac_ratio"});
    get_to(d, "bits", cfg.pipeline.dac.bits);
    get_to(d, "v_full_scale", cfg.pipeline.dac.v_full_scale);
    get_to(d, "cdac_ratio", cfg.pipeline.dac.cdac_ratio);
  }
  if (j.contains("adc")) {
    const json& a = j.at("adc");
    check_keys(a, "adc", {"bits", "lsb"});
    get_to(a, "bits", cfg.pipeline.adc.bits);
    get_to(a, "lsb", cfg.pipeline.adc.lsb);
  }
  if (j.contains("noise")) {
    const json& nz = j.at("noise");
    check_keys(nz, "noise", {"enabled", "trials"});
    get_to(nz, "enabled", cfg.pipeline.noise.enabled);
    get_to(nz, "trials", cfg.pipeline.noise.trials);
  }

  if (j.contains("orthonormal")) {
    const json& o = j.at("orthonormal");
    check_keys(o, "orthonormal", {"rows", "with_calibration", "ideal"});
    get_to(o, "rows", cfg.orthonormal.rows);
    get_to(o, "with_calibration", cfg.orthonormal.with_calibration);
    get_to(o, "ideal", cfg.orthonormal.ideal);
  }
  if (j.contains("matched_filter")) {
    const json& m = j.at("matched_filter");
    check_keys(m, "matched_filter",
               {"chirp_len", "f0", "f1", "amplitude_frac", "snr_db",
                "trials"});
    get_to(m, "chirp_len", cfg.matched_filter.chirp_len);
    get_to(m, "f0", cfg.matched_filter.f0);
    get_to(m, "f1", cfg.matched_filter.f1);
    get_to(m, "amplitude_frac", cfg.matched_filter.amplitude_frac);
    get_to(m, "snr_db", cfg.matched_filter.snr_db);
    get_to(m, "trials", cfg.matched_filter.trials);
  }
  if (j.contains("filter_scan")) {
    const json& f = j.at("filter_scan");
    check_keys(f, "filter_scan",
               {"stride", "with_calibration", "image_csv", "filter_csv"});
    get_to(f, "stride", cfg.filter_scan.stride);
    get_to(f, "with_calibration", cfg.filter_scan.with_calibration);
    get_to(f, "image_csv", cfg.filter_scan.image_csv);
    get_to(f, "filter_csv", cfg.filter_scan.filter_csv);
  }
  if (j.contains("compression_layer")) {
    const json& c = j.at("compression_layer");
    check_keys(c, "compression_layer",
               {"image_size", "channels", "filter_size", "filters_per_channel",
                "image_csv"});
    get_to(c, "image_size", cfg.compression_layer.image_size);
    get_to(c, "channels", cfg.compression_layer.channels);
    get_to(c, "filter_size", cfg.compression_layer.filter_size);
    get_to(c, "filters_per_channel",
           cfg.compression_layer.filters_per_channel);
    get_to(c, "image_csv", cfg.compression_layer.image_csv);
  }
  if (j.contains("sgd_offload")) {
    const json& s = j.at("sgd_offload");
    check_keys(s, "sgd_offload",
               {"steps", "alpha", "ideal", "classes", "features",
                "samples_per_class", "feature_scale", "spread",
                "problem_seed"});
    get_to(s, "steps", cfg.sgd_offload.steps);
    get_to(s, "alpha", cfg.sgd_offload.alpha);
    get_to(s, "ideal", cfg.sgd_offload.ideal);
    get_to(s, "classes", cfg.sgd_offload.classes);
    get_to(s, "features", cfg.sgd_offload.features);
    get_to(s, "samples_per_class", cfg.sgd_offload.samples_per_class);
    get_to(s, "feature_scale", cfg.sgd_offload.feature_scale);
    get_to(s, "spread", cfg.sgd_offload.spread);
    get_to(s, "problem_seed", cfg.sgd_offload.problem_seed);
  }
  if (j.contains("noise_mc")) {
    const json& nm = j.at("noise_mc");
    check_keys(nm, "noise_mc", {"trials", "traces_to_emit"});
    get_to(nm, "trials", cfg.noise_mc.trials);
    get_to(nm, "traces_to_emit", cfg.noise_mc.traces_to_emit);
  }
  if (j.contains("calibration_sweep")) {
    const json& cs = j.at("calibration_sweep");
    check_keys(cs, "calibration_sweep",
               {"size", "actual_rows", "m_list", "demo_c2_ratio"});
    get_to(cs, "size", cfg.calibration_sweep.size);
    get_to(cs, "actual_rows", cfg.calibration_sweep.actual_rows);
    get_to(cs, "m_list", cfg.calibration_sweep.m_list);
    get_to(cs, "demo_c2_ratio", cfg.calibration_sweep.demo_c2_ratio);
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config: cannot read file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: parse error in '" + path.string() +
                      "': " + e.what());
  }
  return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["output_dir"] = output_dir.string();
  j["threads"] = threads;
  j["mac"] = {
      {"mode", pipeline.mac.mode == MacMode::Passive ? "passive" : "active"},
      {"dc_gain", pipeline.mac.dc_gain},
      {"c_unit", pipeline.mac.c_unit},
      {"weight_levels", pipeline.mac.weight_levels},
      {"c2_ratio", pipeline.mac.c2_ratio},
      {"cycles_per_product", pipeline.mac.cycles_per_product},
      {"temperature", pipeline.mac.temperature}};
  j["dac"] = {{"bits", pipeline.dac.bits},
              {"v_full_scale", pipeline.dac.v_full_scale},
              {"cdac_ratio", pipeline.dac.cdac_ratio}};
  j["adc"] = {{"bits", pipeline.adc.bits}, {"lsb", pipeline.adc.lsb}};
  j["noise"] = {{"enabled", pipeline.noise.enabled},
                {"trials", pipeline.noise.trials}};
  j["orthonormal"] = {{"rows", orthonormal.rows},
                      {"with_calibration", orthonormal.with_calibration},
                      {"ideal", orthonormal.ideal}};
  j["matched_filter"] = {{"chirp_len", matched_filter.chirp_len},
                         {"f0", matched_filter.f0},
                         {"f1", matched_filter.f1},
                         {"amplitude_frac", matched_filter.amplitude_frac},
                         {"snr_db", matched_filter.snr_db},
                         {"trials", matched_filter.trials}};
  j["filter_scan"] = {{"stride", filter_scan.stride},
                      {"with_calibration", filter_scan.with_calibration},
                      {"image_csv", filter_scan.image_csv},
                      {"filter_csv", filter_scan.filter_csv}};
  j["compression_layer"] = {
      {"image_size", compression_layer.image_size},
      {"channels", compression_layer.channels},
      {"filter_size", compression_layer.filter_size},
      {"filters_per_channel", compression_layer.filters_per_channel},
      {"image_csv", compression_layer.image_csv}};
  j["sgd_offload"] = {{"steps", sgd_offload.steps},
                      {"alpha", sgd_offload.alpha},
                      {"ideal", sgd_offload.ideal},
                      {"classes", sgd_offload.classes},
                      {"features", sgd_offload.features},
                      {"samples_per_class", sgd_offload.samples_per_class},
                      {"feature_scale", sgd_offload.feature_scale},
                      {"spread", sgd_offload.spread},
                      {"problem_seed", sgd_offload.problem_seed}};
  j["noise_mc"] = {{"trials", noise_mc.trials},
                   {"traces_to_emit", noise_mc.traces_to_emit}};
  j["calibration_sweep"] = {{"size", calibration_sweep.size},
                            {"actual_rows", calibration_sweep.actual_rows},
                            {"m_list", calibration_sweep.m_list},
                            {"demo_c2_ratio", calibration_sweep.demo_c2_ratio}};
  return j;
}

void RunConfig::validate() const {
  if (threads < 1) throw ConfigError("config: threads must be >= 1");
  try {
    pipeline.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentReport run_experiment(const RunConfig& cfg) {
  cfg.validate();

  bool known = false;
  for (const auto& info : list_experiments())
    if (info.name == cfg.experiment) known = true;
  if (!known) {
    std::string names;
    for (const auto& info : list_experiments())
      names += (names.empty() ? "" : ", ") + info.name;
    throw ConfigError("config: unknown experiment '" + cfg.experiment +
                      "'; valid names: " + names);
  }

  Pipeline pipe = cfg.pipeline;
  pipe.noise.rng_seed = cfg.seed;
  const std::filesystem::path out = cfg.output_dir;

  ExperimentReport rep;
  if (cfg.experiment == "orthonormal") {
    rep = run_orthonormal(pipe, cfg.orthonormal, cfg.seed, out);
  } else if (cfg.experiment == "matched-filter") {
    // system noise on by default for the noise-floor sweep
    if (!pipe.noise.enabled) pipe.noise.enabled = true;
    rep = run_matched_filter(pipe, cfg.matched_filter, cfg.seed, out,
                             cfg.threads);
  } else if (cfg.experiment == "filter-scan") {
    rep = run_filter_scan(pipe, cfg.filter_scan, cfg.seed, out);
  } else if (cfg.experiment == "compression-layer") {
    rep = run_compression_layer(pipe, cfg.compression_layer, cfg.seed, out);
  } else if (cfg.experiment == "sgd-offload") {
    rep = run_sgd_offload(pipe, cfg.sgd_offload, cfg.seed, out);
  } else if (cfg.experiment == "noise-mc") {
    rep = run_noise_mc(pipe, cfg.noise_mc, cfg.seed, out, cfg.threads);
  } else {
    rep = run_calibration_sweep(pipe, cfg.calibration_sweep, cfg.seed, out);
  }

  rep.config = cfg.to_json();
  if (!out.empty()) write_report(rep, out);
  return rep;
}

}  // namespace scmac
