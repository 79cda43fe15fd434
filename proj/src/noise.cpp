#include "scmac/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace scmac {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void NoiseSpec::validate() const {
  if (trials < 1)
    throw std::invalid_argument("NoiseSpec: trials must be >= 1");
}

double thermal_energy(const MacConfig& cfg) {
  return kBoltzmann * cfg.temperature;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t domain) {
  return splitmix64(seed ^ splitmix64(domain));
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(derive_seed(seed, trial));
}

double sigma_after_cycles(int i, double c_s, const MacConfig& cfg) {
  cfg.validate();
  if (i < 0) throw std::invalid_argument("sigma_after_cycles: i must be >= 0");
  if (c_s < 0.0)
    throw std::domain_error("sigma_after_cycles: negative capacitance");
  const double cs_tot = cfg.cs_total();
  if (c_s > cs_tot)
    throw std::domain_error("sigma_after_cycles: c_s exceeds C_s,tot");

  const double kt = thermal_energy(cfg);
  const double c2 = cfg.c2();
  // per-cycle injected variance: phi1 sample on c_s referred across the
  // redistribution node, plus the phi2-off sample of the series combination
  const double per_cycle =
      kt * c_s / ((cs_tot + c2) * (cs_tot + c2)) +
      kt * (cs_tot * c2 / (cs_tot + c2)) / (c2 * c2);
  // geometric sum over j = 0..i of (C2/(C2+C_s,tot))^(2j); the closed form
  // stays exact for arbitrarily large i
  const double r = (c2 / (cs_tot + c2)) * (c2 / (cs_tot + c2));
  const double sum = (1.0 - std::pow(r, double(i) + 1.0)) / (1.0 - r);
  return std::sqrt(per_cycle * sum);
}

double sigma_steady_state(const MacConfig& cfg) {
  cfg.validate();
  return std::sqrt(thermal_energy(cfg) / cfg.c2());
}

MacTrace noisy_mac_inner_product(const Eigen::VectorXd& v_in,
                                 const Eigen::VectorXi& row_codes,
                                 const MacConfig& cfg, const NoiseSpec& spec,
                                 std::uint64_t trial) {
  spec.validate();
  if (!spec.enabled) return mac_inner_product(v_in, row_codes, cfg);

  cfg.validate();
  const Eigen::Index n = cfg.cycles_per_product;
  if (v_in.size() != n || row_codes.size() != n)
    throw std::invalid_argument(
        "noisy_mac_inner_product: input length must equal cycles_per_product");

  std::mt19937_64 rng = trial_rng(spec.rng_seed, trial);
  std::normal_distribution<double> unit(0.0, 1.0);

  const double kt = thermal_energy(cfg);
  const double cs_tot = cfg.cs_total();
  const double c2 = cfg.c2();
  // phi2-off: kT * (C_s,tot in series with C2) sampled directly on C2
  const double v2_sigma = std::sqrt(kt * (cs_tot * c2 / (cs_tot + c2))) / c2;

  MacTrace trace(n + 1);
  trace[0] = 0.0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    const double c1 = row_codes[i - 1] * cfg.c_unit;
    const DroopGain dg = droop_and_gain(c1, cfg);
    double v = dg.k * trace[i - 1] + dg.mu * dg.k * v_in[i - 1];
    // phi1: kT * |C_s[i]| sampled charge, referred across redistribution
    const double v1_sigma = std::sqrt(kt * std::abs(c1)) / (cs_tot + c2);
    if (v1_sigma > 0.0) v += v1_sigma * unit(rng);
    if (v2_sigma > 0.0) v += v2_sigma * unit(rng);
    trace[i] = v;
  }
  return trace;
}

}  // namespace scmac
