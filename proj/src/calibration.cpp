#include "scmac/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "scmac/converters.hpp"
#include "scmac/synth.hpp"

namespace scmac {

FeasibleSet FeasibleSet::unconstrained() { return FeasibleSet{}; }

FeasibleSet FeasibleSet::fixed_point(int bits, double scale) {
  FeasibleSet s;
  s.kind = Kind::FixedPoint;
  s.bits = bits;
  s.scale = scale;
  return s;
}

void FeasibleSet::validate() const {
  if (kind == Kind::FixedPoint) {
    if (bits < 2)
      throw std::invalid_argument("FeasibleSet: FixedPoint bits must be >= 2");
    if (!(scale > 0.0))
      throw std::invalid_argument("FeasibleSet: FixedPoint scale must be > 0");
  }
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m) {
  if (!m.allFinite())
    throw std::invalid_argument("pseudo_inverse: non-finite input");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0) return Eigen::MatrixXd::Zero(m.cols(), m.rows());
  const double cutoff = 1e-10 * sv(0);
  Eigen::VectorXd inv(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    inv[i] = sv[i] > cutoff ? 1.0 / sv[i] : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

CalibrationResult solve_correction(const Eigen::MatrixXd& a_target,
                                   const Eigen::MatrixXd& a_actual,
                                   const FeasibleSet& set) {
  set.validate();
  if (a_target.cols() != a_actual.cols())
    throw std::invalid_argument(
        "solve_correction: target and actual column counts differ");
  if (!a_target.allFinite() || !a_actual.allFinite())
    throw std::invalid_argument("solve_correction: non-finite input");

  Eigen::MatrixXd b = a_target * pseudo_inverse(a_actual);

  if (set.kind == FeasibleSet::Kind::FixedPoint) {
    const double lo = -double(1LL << (set.bits - 1)) * set.scale;
    const double hi = (double(1LL << (set.bits - 1)) - 1.0) * set.scale;
    for (Eigen::Index j = 0; j < b.rows(); ++j)
      for (Eigen::Index i = 0; i < b.cols(); ++i) {
        double v = std::round(b(j, i) / set.scale) * set.scale;
        b(j, i) = std::min(hi, std::max(lo, v));
      }
  }

  const double residual = (a_target - b * a_actual).norm();
  return {b, residual, set};
}

std::vector<std::pair<int, double>> error_vs_rows_sweep(
    const Eigen::MatrixXd& a_target_family, const Eigen::MatrixXd& a_actual,
    const std::vector<int>& m_list) {
  std::vector<std::pair<int, double>> out;
  for (int m : m_list) {
    if (m <= 0) continue;
    if (m > a_target_family.rows())
      throw std::invalid_argument(
          "error_vs_rows_sweep: m exceeds available target rows");
    const Eigen::MatrixXd target = a_target_family.topRows(m);
    const CalibrationResult r =
        solve_correction(target, a_actual, FeasibleSet::unconstrained());
    const double denom = target.squaredNorm();
    out.emplace_back(m, r.residual_frobenius * r.residual_frobenius / denom);
  }
  return out;
}

MatrixComparison accentuated_matrix_demo(MacConfig cfg) {
  cfg.validate();
  const int n = cfg.cycles_per_product;

  // quantized orthonormal design, full-rank square
  const int bits = 3;
  const int max_code = (1 << (bits - 1)) - 1;
  const Eigen::MatrixXd basis = dct_basis(n);
  const double w_scale = basis.cwiseAbs().maxCoeff() / double(max_code);
  WeightMatrix w{quantize_matrix(basis, w_scale, bits), bits};

  MatrixComparison cmp;
  cmp.ideal = w.codes.cast<double>() * (cfg.c_unit / cfg.c2());
  cmp.actual = effective_matrix(w, cfg);
  const CalibrationResult r =
      solve_correction(cmp.ideal, cmp.actual, FeasibleSet::unconstrained());
  cmp.corrected = r.b * cmp.actual;
  return cmp;
}

}  // namespace scmac
