#include "scmac/experiments.hpp"

#include <fstream>

namespace scmac {

void write_report(const ExperimentReport& report,
                  const std::filesystem::path& out_dir) {
  nlohmann::json j;
  j["experiment"] = report.name;
  j["seed"] = report.rng_seed;
  j["config"] = report.config;
  nlohmann::json metrics = nlohmann::json::object();
  for (const auto& [k, v] : report.metrics) metrics[k] = v;
  j["metrics"] = metrics;
  j["artifacts"] = report.artifacts;

  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / "report.json");
  if (!out)
    throw std::runtime_error("write_report: cannot open " +
                             (out_dir / "report.json").string());
  out << j.dump(2) << "\n";
}

}  // namespace scmac
