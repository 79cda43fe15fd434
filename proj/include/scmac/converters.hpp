// Ideal data converter models: input DAC (code -> voltage) and SAR ADC
// (voltage -> code, mid-tread with saturation).

#pragma once

#include <Eigen/Dense>

namespace scmac {

struct DacConfig {
  int bits = 6;                 // 5b magnitude + sign
  double v_full_scale = 0.224;  // [V]; default keeps the DAC step at the ADC lsb
  double cdac_ratio = 35.0;     // C_DAC,tot / C_s,tot; loading is neglected at 6b

  double step() const { return v_full_scale / double(1 << (bits - 1)); }
  void validate() const;
};

struct AdcConfig {
  int bits = 6;
  double lsb = 7e-3;  // [V]

  int max_code() const { return (1 << (bits - 1)) - 1; }
  int min_code() const { return -(1 << (bits - 1)); }
  void validate() const;
};

struct DigitalCode {
  int value = 0;
  int bits = 6;
};

// code * v_full_scale / 2^(bits-1); exact zero for code 0.
// Throws std::out_of_range for codes outside the signed bit range.
double dac_decode(const DigitalCode& code, const DacConfig& cfg);

// Mid-tread quantizer, round-half-away-from-zero, saturating at the code
// range. Never throws for finite inputs.
DigitalCode adc_quantize(double v, const AdcConfig& cfg);

// Shared mid-tread rounding used by both converters and the experiment
// front ends: clamp(round(x / lsb)) onto the signed `bits` range.
int quantize_to_code(double x, double lsb, int bits);

Eigen::VectorXi quantize_vector(const Eigen::VectorXd& x, double lsb, int bits);
Eigen::MatrixXi quantize_matrix(const Eigen::MatrixXd& x, double lsb, int bits);

Eigen::VectorXd dac_decode_vector(const Eigen::VectorXi& codes,
                                  const DacConfig& cfg);

}  // namespace scmac
