// Behavioral model of a sequential switched-capacitor MAC core.
//
// One inner product runs n charge-transfer cycles. Each cycle samples the
// input voltage onto a signed cap-DAC C1[i] selected by the weight code and
// redistributes the charge onto the accumulation capacitor C2. Incomplete
// transfer shows up as a per-cycle droop term k[i] (fraction of accumulated
// charge retained, ideally 1) and a gain term mu[i] (ideally C1/C2). Folding
// both into the programmed weights gives the effective matrix the analog
// pipeline actually applies; the operation stays linear in the input.

#pragma once

#include <Eigen/Dense>

namespace scmac {

enum class MacMode { Passive, Active };

struct MacConfig {
  MacMode mode = MacMode::Passive;
  double dc_gain = 1e3;          // amplifier A0, Active mode only
  double c_unit = 300e-18;       // unit multiplying capacitor [F]
  int weight_levels = 4;         // unit caps selected at full-scale weight
  double c2_ratio = 39.0;        // C2 / C_s,tot
  int cycles_per_product = 64;   // n, MAC cycles per inner product
  double temperature = 300.0;    // [K], consumed by the noise model

  double cs_total() const { return weight_levels * c_unit; }
  double c2() const { return c2_ratio * cs_total(); }

  void validate() const;  // throws std::invalid_argument
};

// Signed weight codes (3b two's complement by default) with their capacitor
// interpretation C1 = code * c_unit. The sign is realized as the polarity of
// the sampled charge; charge magnitude is what loads the node.
struct WeightMatrix {
  Eigen::MatrixXi codes;
  int bits = 3;

  Eigen::Index rows() const { return codes.rows(); }
  Eigen::Index cols() const { return codes.cols(); }

  void validate(const MacConfig& cfg) const;
};

// Entries of the realized matrix: (j,i) = mu[j,i] * prod_{l=i..n} k[j,l].
using EffectiveMatrix = Eigen::MatrixXd;

// Accumulation-capacitor voltage per cycle; index 0 is the reset state (0 V).
using MacTrace = Eigen::VectorXd;

struct DroopGain {
  double k;   // charge retained per cycle, 0 < k <= 1
  double mu;  // signed voltage gain
};

// Per-cycle droop and gain for a signed sampling capacitance c1 [F].
// Throws std::domain_error when |c1| exceeds the full-scale C_s,tot.
DroopGain droop_and_gain(double c1, const MacConfig& cfg);

// The matrix the pipeline applies once droop and gain errors are embedded.
EffectiveMatrix effective_matrix(const WeightMatrix& weights,
                                 const MacConfig& cfg);

// One deterministic inner product; returns the full per-cycle trace.
MacTrace mac_inner_product(const Eigen::VectorXd& v_in,
                           const Eigen::VectorXi& row_codes,
                           const MacConfig& cfg);

// Final voltages for all m rows, each an independent n-cycle pass.
Eigen::VectorXd matrix_multiply(const Eigen::VectorXd& v_in,
                                const WeightMatrix& weights,
                                const MacConfig& cfg);

}  // namespace scmac
