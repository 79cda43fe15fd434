#include "scmac/pipeline.hpp"

#include <stdexcept>

namespace scmac {

void Pipeline::validate() const {
  mac.validate();
  dac.validate();
  adc.validate();
  noise.validate();
}

Eigen::VectorXd Pipeline::analog_outputs(const WeightMatrix& w,
                                         const Eigen::VectorXi& x_codes,
                                         std::uint64_t trial) const {
  validate();
  w.validate(mac);
  if (w.cols() != mac.cycles_per_product)
    throw std::invalid_argument(
        "Pipeline: weight columns must equal cycles_per_product");
  if (x_codes.size() != w.cols())
    throw std::invalid_argument("Pipeline: input length mismatch");
  if (w.rows() > 4096)
    throw std::invalid_argument("Pipeline: more than 4096 rows per trial");

  const Eigen::VectorXd v_in = dac_decode_vector(x_codes, dac);
  Eigen::VectorXd y(w.rows());
  for (Eigen::Index j = 0; j < w.rows(); ++j) {
    const Eigen::VectorXi row = w.codes.row(j);
    // one reused physical MAC: row streams stay disjoint per trial
    const MacTrace trace =
        noisy_mac_inner_product(v_in, row, mac, noise, trial * 4096 + j);
    y[j] = trace[trace.size() - 1];
  }
  return y;
}

Eigen::VectorXi Pipeline::multiply(const WeightMatrix& w,
                                   const Eigen::VectorXi& x_codes,
                                   std::uint64_t trial) const {
  const Eigen::VectorXd y = analog_outputs(w, x_codes, trial);
  Eigen::VectorXi codes(y.size());
  for (Eigen::Index j = 0; j < y.size(); ++j)
    codes[j] = adc_quantize(y[j], adc).value;
  return codes;
}

double Pipeline::output_descale(double weight_scale,
                                double input_scale) const {
  return mac.c2() * weight_scale * input_scale / (mac.c_unit * dac.step());
}

}  // namespace scmac
