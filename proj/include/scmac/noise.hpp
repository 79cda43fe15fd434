// kT/C thermal noise on the accumulation capacitor: the analytic RMS
// accumulation curve and Monte Carlo sample paths that validate it.
//
// Per MAC cycle two sampled-noise charges are injected: kT*|C_s[i]| when
// phi1 opens (referred across the redistribution node) and kT*(C_s,tot
// in series with C2) when phi2 opens (directly on C2). Accumulated noise
// droops from cycle to cycle exactly like the signal does.

#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "scmac/charge_core.hpp"

namespace scmac {

inline constexpr double kBoltzmann = 1.380649e-23;  // [J/K]

struct NoiseSpec {
  bool enabled = false;
  std::uint64_t rng_seed = 0;
  int trials = 1;  // Monte Carlo count

  void validate() const;
};

// kT [J] at the configured temperature.
double thermal_energy(const MacConfig& cfg);

// RMS noise voltage on C2 after cycle index i (a sum of i+1 geometric
// terms), assuming a constant per-cycle sampling capacitance c_s [F].
// i may exceed cycles_per_product; the closed form extends to the
// steady-state limit. Throws std::domain_error for c_s < 0 or outside
// [0, C_s,tot], std::invalid_argument for i < 0.
double sigma_after_cycles(int i, double c_s, const MacConfig& cfg);

// The i -> infinity equilibrium value sqrt(kT / C2).
double sigma_steady_state(const MacConfig& cfg);

// One noisy sample path of the inner product. `trial` selects an
// independent, scheduling-independent random stream derived from
// (spec.rng_seed, trial). With spec.enabled == false this is exactly
// mac_inner_product.
MacTrace noisy_mac_inner_product(const Eigen::VectorXd& v_in,
                                 const Eigen::VectorXi& row_codes,
                                 const MacConfig& cfg, const NoiseSpec& spec,
                                 std::uint64_t trial = 0);

// Deterministic seed mixing (splitmix64) so parallel trials reproduce
// regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t domain);
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace scmac
