// Deterministic signal and data generators used by the experiments.

#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

namespace scmac {

// Orthonormal DCT-II basis; rows are the basis vectors.
Eigen::MatrixXd dct_basis(int n);

// Unit-amplitude linear chirp, instantaneous normalized frequency f0 -> f1.
Eigen::VectorXd linear_chirp(int n, double f0, double f1);

struct GaborParams {
  double theta = 0.785398163397448;  // orientation [rad]
  double lambda = 4.0;               // wavelength [px]
  double sigma = 3.0;                // envelope std dev [px]
  double gamma = 0.5;                // aspect ratio
  double psi = 1.570796326794897;    // phase [rad]; pi/2 is odd-symmetric
};

// Gabor patch; zero_mean subtracts the patch mean so flat regions map to 0.
Eigen::MatrixXd gabor_filter(int rows, int cols, const GaborParams& p,
                             bool zero_mean = true);

// Grayscale test pattern in [-1, 1]: low-contrast texture plus bright/dark
// blobs and an oriented grating, so filter responses span both the
// sub-lsb and multi-code regimes.
Eigen::MatrixXd synth_test_image(int rows, int cols);

// Three channel planes in [-1, 1], deterministically derived from the seed.
std::array<Eigen::MatrixXd, 3> synth_rgb_image(int rows, int cols,
                                               std::uint64_t seed);

// Linearly separable classification data: samples (rows) around one center
// per class, one-hot targets.
struct ClassificationProblem {
  Eigen::MatrixXd samples;  // (classes*samples_per_class) x features
  Eigen::MatrixXd targets;  // same rows x classes, one-hot
};

ClassificationProblem make_classification_problem(int features, int classes,
                                                  int samples_per_class,
                                                  double feature_scale,
                                                  double spread,
                                                  std::uint64_t seed);

}  // namespace scmac
