#include "scmac/converters.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scmac {

void DacConfig::validate() const {
  if (bits < 2) throw std::invalid_argument("DacConfig: bits must be >= 2");
  if (!(v_full_scale > 0.0))
    throw std::invalid_argument("DacConfig: v_full_scale must be > 0");
  if (!(cdac_ratio > 0.0))
    throw std::invalid_argument("DacConfig: cdac_ratio must be > 0");
}

void AdcConfig::validate() const {
  if (bits < 1) throw std::invalid_argument("AdcConfig: bits must be >= 1");
  if (!(lsb > 0.0)) throw std::invalid_argument("AdcConfig: lsb must be > 0");
}

double dac_decode(const DigitalCode& code, const DacConfig& cfg) {
  cfg.validate();
  const int lo = -(1 << (cfg.bits - 1));
  const int hi = (1 << (cfg.bits - 1)) - 1;
  if (code.value < lo || code.value > hi)
    throw std::out_of_range("dac_decode: code " + std::to_string(code.value) +
                            " outside " + std::to_string(cfg.bits) +
                            "b range");
  return code.value * cfg.step();
}

int quantize_to_code(double x, double lsb, int bits) {
  if (!(lsb > 0.0))
    throw std::invalid_argument("quantize_to_code: lsb must be > 0");
  if (!std::isfinite(x))
    throw std::invalid_argument("quantize_to_code: non-finite input");
  const long long lo = -(1LL << (bits - 1));
  const long long hi = (1LL << (bits - 1)) - 1;
  const double scaled = x / lsb;
  // round half away from zero, then saturate
  long long q;
  if (scaled >= double(hi))
    q = hi;
  else if (scaled <= double(lo))
    q = lo;
  else
    q = std::llround(scaled);
  if (q > hi) q = hi;
  if (q < lo) q = lo;
  return int(q);
}

DigitalCode adc_quantize(double v, const AdcConfig& cfg) {
  cfg.validate();
  return {quantize_to_code(v, cfg.lsb, cfg.bits), cfg.bits};
}

Eigen::VectorXi quantize_vector(const Eigen::VectorXd& x, double lsb,
                                int bits) {
  Eigen::VectorXi out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[i] = quantize_to_code(x[i], lsb, bits);
  return out;
}

Eigen::MatrixXi quantize_matrix(const Eigen::MatrixXd& x, double lsb,
                                int bits) {
  Eigen::MatrixXi out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.rows(); ++j)
    for (Eigen::Index i = 0; i < x.cols(); ++i)
      out(j, i) = quantize_to_code(x(j, i), lsb, bits);
  return out;
}

Eigen::VectorXd dac_decode_vector(const Eigen::VectorXi& codes,
                                  const DacConfig& cfg) {
  Eigen::VectorXd out(codes.size());
  for (Eigen::Index i = 0; i < codes.size(); ++i)
    out[i] = dac_decode({codes[i], cfg.bits}, cfg);
  return out;
}

}  // namespace scmac
