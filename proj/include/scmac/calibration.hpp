// Matrix-factorization calibration: solve min_B ||A - B*Atilde||_F over a
// feasible set so a digital post-matrix corrects the linear analog errors.

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "scmac/charge_core.hpp"

namespace scmac {

struct FeasibleSet {
  enum class Kind { Unconstrained, FixedPoint };

  Kind kind = Kind::Unconstrained;
  int bits = 8;        // FixedPoint only
  double scale = 1.0;  // FixedPoint grid step

  static FeasibleSet unconstrained();
  static FeasibleSet fixed_point(int bits, double scale);
  void validate() const;
};

struct CalibrationResult {
  Eigen::MatrixXd b;
  double residual_frobenius = 0.0;
  FeasibleSet set;
};

// Moore-Penrose pseudoinverse via SVD; singular values below
// 1e-10 * sigma_max are treated as zero.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m);

// Unconstrained: B = a_target * pinv(a_actual), the global minimum.
// FixedPoint: unconstrained solve, then entrywise projection onto the
// grid {k * scale}, residual recomputed after projection.
CalibrationResult solve_correction(const Eigen::MatrixXd& a_target,
                                   const Eigen::MatrixXd& a_actual,
                                   const FeasibleSet& set);

// One solve per m over the leading rows of the target family; returns
// (m, residual^2 / ||target||_F^2). Non-positive m entries are skipped.
std::vector<std::pair<int, double>> error_vs_rows_sweep(
    const Eigen::MatrixXd& a_target_family, const Eigen::MatrixXd& a_actual,
    const std::vector<int>& m_list);

struct MatrixComparison {
  Eigen::MatrixXd ideal;      // intended matrix A
  Eigen::MatrixXd actual;     // realized matrix Atilde
  Eigen::MatrixXd corrected;  // B * Atilde
};

// Side-by-side comparison on a quantized orthonormal design. Pass a config
// with a small c2_ratio (e.g. 10) to accentuate the droop visually.
MatrixComparison accentuated_matrix_demo(MacConfig cfg);

}  // namespace scmac
