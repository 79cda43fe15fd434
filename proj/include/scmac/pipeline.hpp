// Digital-in / digital-out pipeline: input codes -> DAC -> sequential MAC
// rows -> SAR ADC codes. One A/D conversion per output row.

#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "scmac/charge_core.hpp"
#include "scmac/converters.hpp"
#include "scmac/noise.hpp"

namespace scmac {

struct Pipeline {
  MacConfig mac;
  DacConfig dac;
  AdcConfig adc;
  NoiseSpec noise;

  void validate() const;

  // Final accumulation voltages before quantization, one per weight row.
  // Rows use independent noise streams derived from (trial, row).
  Eigen::VectorXd analog_outputs(const WeightMatrix& w,
                                 const Eigen::VectorXi& x_codes,
                                 std::uint64_t trial = 0) const;

  // Quantized output codes.
  Eigen::VectorXi multiply(const WeightMatrix& w,
                           const Eigen::VectorXi& x_codes,
                           std::uint64_t trial = 0) const;

  // Factor mapping output volts back to real-unit products, given the
  // quantization scales used to produce the weight and input codes.
  double output_descale(double weight_scale, double input_scale) const;
};

}  // namespace scmac
