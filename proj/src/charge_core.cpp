#include "scmac/charge_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scmac {

void MacConfig::validate() const {
  if (!(c_unit > 0.0))
    throw std::invalid_argument("MacConfig: c_unit must be > 0");
  if (!(c2_ratio > 0.0))
    throw std::invalid_argument("MacConfig: c2_ratio must be > 0");
  if (weight_levels < 1)
    throw std::invalid_argument("MacConfig: weight_levels must be >= 1");
  if (cycles_per_product < 1)
    throw std::invalid_argument("MacConfig: cycles_per_product must be >= 1");
  if (!(temperature >= 0.0))
    throw std::invalid_argument("MacConfig: temperature must be >= 0");
  if (mode == MacMode::Active && !(dc_gain > 0.0))
    throw std::invalid_argument("MacConfig: Active mode requires dc_gain > 0");
}

void WeightMatrix::validate(const MacConfig& cfg) const {
  if (bits < 1) throw std::invalid_argument("WeightMatrix: bits must be >= 1");
  const int lo = -(1 << (bits - 1));
  const int hi = (1 << (bits - 1)) - 1;
  for (Eigen::Index j = 0; j < codes.rows(); ++j) {
    for (Eigen::Index i = 0; i < codes.cols(); ++i) {
      const int c = codes(j, i);
      if (c < lo || c > hi)
        throw std::invalid_argument("WeightMatrix: code " + std::to_string(c) +
                                    " outside " + std::to_string(bits) +
                                    "b range");
      if (std::abs(c) > cfg.weight_levels)
        throw std::invalid_argument(
            "WeightMatrix: |code| exceeds weight_levels; |C1| > C_s,tot");
    }
  }
}

DroopGain droop_and_gain(double c1, const MacConfig& cfg) {
  cfg.validate();
  const double cs_tot = cfg.cs_total();
  const double c1_mag = std::abs(c1);
  if (!(c1_mag <= cs_tot))
    throw std::domain_error("droop_and_gain: |c1| exceeds C_s,tot");

  const double c2 = cfg.c2();
  if (cfg.mode == MacMode::Passive) {
    return {c2 / (c2 + c1_mag), c1 / c2};
  }
  const double a0 = cfg.dc_gain;
  const double c2_eff = c2 * (a0 + 1.0);  // finite gain boosts the hold node
  return {c2_eff / (c2_eff + c1_mag), (c1 / c2) * a0 / (a0 + 1.0)};
}

EffectiveMatrix effective_matrix(const WeightMatrix& weights,
                                 const MacConfig& cfg) {
  cfg.validate();
  weights.validate(cfg);
  const Eigen::Index n = cfg.cycles_per_product;
  if (weights.cols() != n)
    throw std::invalid_argument(
        "effective_matrix: weight columns must equal cycles_per_product");

  const Eigen::Index m = weights.rows();
  EffectiveMatrix a(m, n);
  for (Eigen::Index j = 0; j < m; ++j) {
    // entry (j,i) = mu[i] * prod_{l=i..n} k[l]; accumulate the suffix
    // product right to left.
    double suffix = 1.0;
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      const DroopGain dg =
          droop_and_gain(weights.codes(j, i) * cfg.c_unit, cfg);
      suffix *= dg.k;
      a(j, i) = dg.mu * suffix;
    }
  }
  return a;
}

MacTrace mac_inner_product(const Eigen::VectorXd& v_in,
                           const Eigen::VectorXi& row_codes,
                           const MacConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = cfg.cycles_per_product;
  if (v_in.size() != n || row_codes.size() != n)
    throw std::invalid_argument(
        "mac_inner_product: input length must equal cycles_per_product");

  MacTrace trace(n + 1);
  trace[0] = 0.0;  // reset state
  for (Eigen::Index i = 1; i <= n; ++i) {
    const DroopGain dg =
        droop_and_gain(row_codes[i - 1] * cfg.c_unit, cfg);
    trace[i] = dg.k * trace[i - 1] + dg.mu * dg.k * v_in[i - 1];
  }
  return trace;
}

Eigen::VectorXd matrix_multiply(const Eigen::VectorXd& v_in,
                                const WeightMatrix& weights,
                                const MacConfig& cfg) {
  cfg.validate();
  weights.validate(cfg);
  if (weights.cols() != cfg.cycles_per_product || v_in.size() != weights.cols())
    throw std::invalid_argument("matrix_multiply: dimension mismatch");

  Eigen::VectorXd y(weights.rows());
  for (Eigen::Index j = 0; j < weights.rows(); ++j) {
    const Eigen::VectorXi row = weights.codes.row(j);
    const MacTrace trace = mac_inner_product(v_in, row, cfg);
    y[j] = trace[trace.size() - 1];
  }
  return y;
}

}  // namespace scmac
