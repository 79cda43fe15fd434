#include <cstdio>
#include <filesystem>
#include <random>

#include <doctest.h>

#include "scmac/csv.hpp"
#include "scmac/pipeline.hpp"
#include "scmac/synth.hpp"

using namespace scmac;

TEST_CASE("dct basis is orthonormal") {
  const Eigen::MatrixXd t = dct_basis(64);
  const Eigen::MatrixXd gram = t * t.transpose();
  CHECK((gram - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("chirp stays within unit amplitude and starts at 1") {
  const Eigen::VectorXd c = linear_chirp(64, 0.0, 0.4);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c.cwiseAbs().maxCoeff() <= 1.0 + 1e-15);
}

TEST_CASE("gabor filter is zero mean by construction") {
  const Eigen::MatrixXd g = gabor_filter(8, 8, GaborParams{});
  CHECK(std::abs(g.mean()) <= 1e-15);
}

TEST_CASE("synthetic images stay in range") {
  const Eigen::MatrixXd img = synth_test_image(40, 40);
  CHECK(img.maxCoeff() <= 1.0);
  CHECK(img.minCoeff() >= -1.0);
  const auto rgb = synth_rgb_image(32, 32, 5);
  for (const auto& plane : rgb) {
    CHECK(plane.rows() == 32);
    CHECK(plane.maxCoeff() <= 1.0);
    CHECK(plane.minCoeff() >= -1.0);
  }
  // deterministic for a fixed seed
  const auto rgb2 = synth_rgb_image(32, 32, 5);
  CHECK((rgb[0] - rgb2[0]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("classification problem is shaped and separable") {
  const auto p = make_classification_problem(64, 8, 8, 250.0, 0.3, 11);
  CHECK(p.samples.rows() == 64);
  CHECK(p.samples.cols() == 64);
  CHECK(p.targets.rows() == 64);
  CHECK(p.targets.cols() == 8);
  for (int r = 0; r < 64; ++r) CHECK(p.targets.row(r).sum() == 1.0);
  // nearest-center classification is perfect on separable data
  Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(8, 64);
  for (int c = 0; c < 8; ++c) {
    for (int r = 0; r < 64; ++r)
      if (p.targets(r, c) == 1.0) centers.row(c) += p.samples.row(r);
    centers.row(c) /= 8.0;
  }
  for (int r = 0; r < 64; ++r) {
    Eigen::Index truth, best = 0;
    p.targets.row(r).maxCoeff(&truth);
    double best_d = 1e300;
    for (int c = 0; c < 8; ++c) {
      const double d = (p.samples.row(r) - centers.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    CHECK(best == truth);
  }
}

TEST_CASE("pipeline recovers products in the near-ideal limit") {
  Pipeline pipe;
  pipe.mac.c2_ratio = 1e9;     // no droop
  pipe.adc.lsb = 1e-7;         // fine output quantizer
  pipe.adc.bits = 28;
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> wcode(-4, 3);
  std::uniform_real_distribution<double> xval(-1.0, 1.0);

  const int n = pipe.mac.cycles_per_product;
  WeightMatrix w;
  w.codes.resize(2, n);
  Eigen::MatrixXd w_real(2, n);
  const double w_scale = 0.25;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < n; ++i) {
      w.codes(j, i) = wcode(rng);
      w_real(j, i) = w.codes(j, i) * w_scale;
    }
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = xval(rng);
  const double x_scale = 1.0 / 31.0;
  const Eigen::VectorXi x_codes = quantize_vector(x, x_scale, pipe.dac.bits);
  const Eigen::VectorXd x_q = x_codes.cast<double>() * x_scale;

  const Eigen::VectorXi y = pipe.multiply(w, x_codes);
  const double descale = pipe.output_descale(w_scale, x_scale);
  for (int j = 0; j < 2; ++j) {
    const double recovered = y[j] * pipe.adc.lsb * descale;
    const double expected = w_real.row(j).dot(x_q);
    CHECK(recovered == doctest::Approx(expected).epsilon(1e-4));
  }
}

TEST_CASE("pipeline validates shapes") {
  Pipeline pipe;
  WeightMatrix w{Eigen::MatrixXi::Zero(1, 10), 3};
  CHECK_THROWS_AS(pipe.multiply(w, Eigen::VectorXi::Zero(10)),
                  std::invalid_argument);
}

TEST_CASE("matrix csv round trip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  Eigen::MatrixXd m(5, 7);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 7; ++c) m(r, c) = u(rng);
  const auto path =
      std::filesystem::temp_directory_path() / "scmac_roundtrip.csv";
  write_matrix_csv(path, m);
  const Eigen::MatrixXd back = read_matrix_csv(path);
  CHECK(back.rows() == 5);
  CHECK(back.cols() == 7);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);  // %.17g is lossless
  std::filesystem::remove(path);
}

TEST_CASE("csv errors") {
  CHECK_THROWS_AS(read_matrix_csv("/nonexistent/file.csv"),
                  std::runtime_error);
  const auto path = std::filesystem::temp_directory_path() / "scmac_bad.csv";
  {
    std::ofstream out(path);
    out << "2,3\n1,2,3\n";  // truncated second row
  }
  CHECK_THROWS_AS(read_matrix_csv(path), std::runtime_error);
  std::filesystem::remove(path);

  CsvWriter w(std::filesystem::temp_directory_path() / "scmac_tbl.csv",
              {"a", "b"});
  CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);
}
