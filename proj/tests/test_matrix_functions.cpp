#include "bistats/matrix_functions.hpp"

#include <doctest.h>

#include <random>

#include "bistats/errors.hpp"
#include "support/oracles.hpp"

using namespace bistats;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("matrix_exp matches the series oracle on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 6;
    const Eigen::MatrixXd a = random_matrix(rng, n, 0.4);
    const Eigen::MatrixXd expected = oracles::exp_series(a);
    CHECK((matrix_exp(a) - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("matrix_exp handles large norms via scaling and squaring") {
  std::mt19937_64 rng(11);
  const Eigen::MatrixXd a = random_matrix(rng, 4, 3.0);
  // exp(A) = exp(A/2)^2 gives an independent consistency route.
  const Eigen::MatrixXd half = oracles::exp_series(a / 2.0);
  const Eigen::MatrixXd expected = half * half;
  CHECK((matrix_exp(a) - expected).cwiseAbs().maxCoeff() <
        1e-10 * expected.cwiseAbs().maxCoeff());
}

TEST_CASE("matrix_exp of a rotation generator matches Rodrigues") {
  Eigen::Matrix3d k;
  k << 0, -1, 0, 1, 0, 0, 0, 0, 0;  // z-axis generator
  for (double angle : {0.1, 1.0, 2.5, 3.0}) {
    const Eigen::Matrix3d expected =
        oracles::rodrigues(Eigen::Vector3d::UnitZ(), angle);
    CHECK((matrix_exp(angle * k) - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("matrix_log inverts matrix_exp") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const Eigen::MatrixXd a = random_matrix(rng, n, 0.3);
    const Eigen::MatrixXd roundtrip = matrix_log(matrix_exp(a));
    CHECK((roundtrip - a).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("matrix_log matches the Mercator series near the identity") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd a =
        Eigen::MatrixXd::Identity(3, 3) + random_matrix(rng, 3, 0.1);
    const Eigen::MatrixXd expected = oracles::log_series(a);
    CHECK((matrix_log(a) - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("matrix_log needs square roots for matrices far from identity") {
  // exp(A) with ||A|| ~ 2 forces several inverse-scaling square roots.
  std::mt19937_64 rng(19);
  const Eigen::MatrixXd a = random_matrix(rng, 3, 1.0);
  CHECK((matrix_log(matrix_exp(a)) - a).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("matrix_log rejects spectra on the negative real axis") {
  Eigen::Matrix2d neg;
  neg << -1, 0, 0, 2;
  CHECK_THROWS_AS(matrix_log(neg), OutOfDomainError);

  Eigen::Matrix2d sing;
  sing << 0, 0, 0, 1;
  CHECK_THROWS_AS(matrix_log(sing), OutOfDomainError);

  // Rotation by pi: eigenvalues -1, -1, 1.
  const Eigen::Matrix3d rot_pi =
      oracles::rodrigues(Eigen::Vector3d(1, 2, 3), M_PI);
  CHECK_THROWS_AS(matrix_log(rot_pi), OutOfDomainError);
}

TEST_CASE("matrix_log accepts spectra just off the branch cut") {
  const Eigen::Matrix3d rot =
      oracles::rodrigues(Eigen::Vector3d::UnitX(), M_PI - 1e-4);
  const Eigen::MatrixXd l = matrix_log(rot);
  CHECK((matrix_exp(l) - rot).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("spectrum_branch_distance") {
  Eigen::Matrix2d diag;
  diag << 2, 0, 0, 3;
  CHECK(spectrum_branch_distance(diag) == doctest::Approx(2.0));
  const Eigen::Matrix3d rot =
      oracles::rodrigues(Eigen::Vector3d::UnitZ(), M_PI / 2);
  // Eigenvalues i, -i, 1: distance 1 for the imaginary pair.
  CHECK(spectrum_branch_distance(rot) == doctest::Approx(1.0));
}

TEST_CASE("matrix_sqrt squares back") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd a = matrix_exp(random_matrix(rng, 4, 0.8));
    const Eigen::MatrixXd s = matrix_sqrt(a);
    CHECK((s * s - a).cwiseAbs().maxCoeff() <
          1e-11 * std::max(1.0, a.cwiseAbs().maxCoeff()));
  }
}
