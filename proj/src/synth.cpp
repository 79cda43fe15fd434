#include "scmac/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scmac/noise.hpp"

namespace scmac {

namespace {
constexpr double kPi = std::numbers::pi;
}

Eigen::MatrixXd dct_basis(int n) {
  if (n < 1) throw std::invalid_argument("dct_basis: n must be >= 1");
  Eigen::MatrixXd t(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
    for (int i = 0; i < n; ++i)
      t(k, i) = s * std::cos(kPi * (2.0 * i + 1.0) * k / (2.0 * n));
  }
  return t;
}

Eigen::VectorXd linear_chirp(int n, double f0, double f1) {
  if (n < 1) throw std::invalid_argument("linear_chirp: n must be >= 1");
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    const double t = double(i);
    x[i] = std::cos(2.0 * kPi * (f0 * t + 0.5 * (f1 - f0) * t * t / n));
  }
  return x;
}

Eigen::MatrixXd gabor_filter(int rows, int cols, const GaborParams& p,
                             bool zero_mean) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("gabor_filter: empty shape");
  Eigen::MatrixXd g(rows, cols);
  const double cr = (rows - 1) / 2.0;
  const double cc = (cols - 1) / 2.0;
  for (int u = 0; u < rows; ++u)
    for (int v = 0; v < cols; ++v) {
      const double x = (u - cr) * std::cos(p.theta) + (v - cc) * std::sin(p.theta);
      const double y = -(u - cr) * std::sin(p.theta) + (v - cc) * std::cos(p.theta);
      g(u, v) = std::exp(-(x * x + p.gamma * p.gamma * y * y) /
                         (2.0 * p.sigma * p.sigma)) *
                std::cos(2.0 * kPi * x / p.lambda + p.psi);
    }
  if (zero_mean) g.array() -= g.mean();
  return g;
}

Eigen::MatrixXd synth_test_image(int rows, int cols) {
  Eigen::MatrixXd img(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double v = 0.10 * std::sin(2.0 * kPi * r / 9.0) *
                 std::cos(2.0 * kPi * c / 7.0);
      v += 0.06 * ((r + c) % 2);
      // oriented grating patch that excites a 45-degree filter
      if (r >= rows / 10 && r < rows / 2 && c >= cols / 2 &&
          c < cols * 9 / 10) {
        v += 0.85 * std::cos(2.0 * kPi * (r + c) * std::sqrt(0.5) / 4.0);
      }
      const double r1 = r - rows * 0.25, c1 = c - cols * 0.3;
      v += 1.0 * std::exp(-(r1 * r1 + c1 * c1) / 18.0);
      const double r2 = r - rows * 0.75, c2 = c - cols * 0.25;
      v -= 0.9 * std::exp(-(r2 * r2 + c2 * c2) / 30.0);
      v += 0.30 * std::sin(2.0 * kPi * c / 16.0);
      img(r, c) = std::min(1.0, std::max(-1.0, v));
    }
  return img;
}

std::array<Eigen::MatrixXd, 3> synth_rgb_image(int rows, int cols,
                                               std::uint64_t seed) {
  std::array<Eigen::MatrixXd, 3> planes;
  const Eigen::MatrixXd base = synth_test_image(rows, cols);
  for (int ch = 0; ch < 3; ++ch) {
    std::mt19937_64 rng = trial_rng(seed, std::uint64_t(ch));
    std::uniform_real_distribution<double> u(-0.15, 0.15);
    Eigen::MatrixXd plane(rows, cols);
    const double tilt = 0.2 * (ch - 1);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        double v = base(r, c) + tilt * (2.0 * c / std::max(1, cols - 1) - 1.0);
        v += u(rng);
        plane(r, c) = std::min(1.0, std::max(-1.0, v));
      }
    planes[ch] = plane;
  }
  return planes;
}

ClassificationProblem make_classification_problem(int features, int classes,
                                                  int samples_per_class,
                                                  double feature_scale,
                                                  double spread,
                                                  std::uint64_t seed) {
  if (features < 1 || classes < 1 || samples_per_class < 1)
    throw std::invalid_argument("make_classification_problem: bad shape");
  std::mt19937_64 rng = trial_rng(seed, 0);
  std::normal_distribution<double> unit(0.0, 1.0);

  Eigen::MatrixXd centers(classes, features);
  for (int c = 0; c < classes; ++c) {
    for (int f = 0; f < features; ++f) centers(c, f) = unit(rng);
    centers.row(c) *= feature_scale / centers.row(c).norm();
  }

  const int total = classes * samples_per_class;
  ClassificationProblem p;
  p.samples.resize(total, features);
  p.targets = Eigen::MatrixXd::Zero(total, classes);
  const double jitter = spread * feature_scale / std::sqrt(double(features));
  int row = 0;
  for (int c = 0; c < classes; ++c)
    for (int s = 0; s < samples_per_class; ++s, ++row) {
      for (int f = 0; f < features; ++f)
        p.samples(row, f) = centers(c, f) + jitter * unit(rng);
      p.targets(row, c) = 1.0;
    }
  return p;
}

}  // namespace scmac
