#include "rqf/gaussian.hpp"
#include "rqf/partition.hpp"
#include "rqf/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rqf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("symplectic_form basic blocks") {
  const Eigen::MatrixXd one = symplectic_form(1);
  CHECK(one(0, 0) == 0.0);
  CHECK(one(0, 1) == 1.0);
  CHECK(one(1, 0) == -1.0);
  CHECK(one(1, 1) == 0.0);

  const Eigen::MatrixXd two = symplectic_form(2);
  CHECK(two.topLeftCorner(2, 2) == one);
  CHECK(two.bottomRightCorner(2, 2) == one);
  CHECK(two.topRightCorner(2, 2).isZero(0.0));

  for (int n = 1; n <= 5; ++n) {
    const Eigen::MatrixXd omega = symplectic_form(n);
    CHECK(oracle::max_abs(omega * omega + Eigen::MatrixXd::Identity(2 * n, 2 * n)) == 0.0);
  }
  CHECK_THROWS_AS(symplectic_form(0), std::invalid_argument);
}

TEST_CASE("single_mode_cov closed form") {
  const CovarianceMatrix vac = single_mode_cov({1.0, 0.0, 0.3});
  CHECK(oracle::max_abs(vac.mat() - Eigen::MatrixXd::Identity(2, 2)) < 1e-15);

  const CovarianceMatrix thermal = single_mode_cov({0.5, 0.0, 0.0});
  CHECK(oracle::max_abs(thermal.mat() - 2.0 * Eigen::MatrixXd::Identity(2, 2)) < 1e-15);
  CHECK(thermal.mat().determinant() == doctest::Approx(4.0).epsilon(1e-12));

  const CovarianceMatrix squeezed = single_mode_cov({1.0, 1.0, 0.0});
  CHECK(squeezed(0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(squeezed(1, 1) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
  CHECK(squeezed(0, 1) == 0.0);

  CHECK_THROWS_AS(single_mode_cov({0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(single_mode_cov({-0.2, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(single_mode_cov({1.2, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("single_mode_cov determinant is 1/mu^2 across the parameter box") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const double mu = uniform_in(rng, 0.1, 1.0);
    const double r = uniform_in(rng, -2.0, 2.0);
    const double theta = uniform_in(rng, 0.0, kPi / 4.0);
    const double det = single_mode_cov({mu, r, theta}).mat().determinant();
    CHECK(std::abs(det - 1.0 / (mu * mu)) <= 1e-10 / (mu * mu));
  }
}

TEST_CASE("covariance constructor rejects bad input") {
  Eigen::MatrixXd odd(3, 3);
  odd.setIdentity();
  CHECK_THROWS_AS(CovarianceMatrix{odd}, std::invalid_argument);

  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(CovarianceMatrix{asym}, std::invalid_argument);
}

TEST_CASE("symplectic eigenvalues of simple states") {
  CHECK(symplectic_eigenvalues(CovarianceMatrix(Eigen::MatrixXd::Identity(4, 4))) ==
        std::vector<double>{1.0, 1.0});

  const auto thermal = symplectic_eigenvalues(
      CovarianceMatrix(2.0 * Eigen::MatrixXd::Identity(2, 2)));
  REQUIRE(thermal.size() == 1);
  CHECK(thermal[0] == doctest::Approx(2.0).epsilon(1e-12));

  const auto squeezed = symplectic_eigenvalues(single_mode_cov({1.0, 1.0, 0.0}));
  REQUIRE(squeezed.size() == 1);
  CHECK(std::abs(squeezed[0] - 1.0) < 1e-10);
}

TEST_CASE("pure single-mode states sit exactly at the vacuum floor") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto nu = symplectic_eigenvalues(
        single_mode_cov({1.0, uniform_in(rng, -2.0, 2.0), uniform_in(rng, 0.0, kPi / 4.0)}));
    CHECK(std::abs(nu[0] - 1.0) < 1e-10);
  }
}

TEST_CASE("symplectic spectrum is a congruence invariant") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = uniform_int(rng, 2, 4);
    std::vector<double> masses;
    for (int k = 0; k < n; ++k) masses.push_back(std::exp(uniform_in(rng, -3.0, 3.0)));
    const PartitionTransform t = cmr_matrix(ParticleSystem(masses));
    const CovarianceMatrix v = oracle::random_physical_cov(rng, n);
    const auto before = symplectic_eigenvalues(v);
    const auto after = symplectic_eigenvalues(transform_cov(v, t));
    for (std::size_t k = 0; k < before.size(); ++k) {
      CHECK(std::abs(before[k] - after[k]) <= 1e-9 * std::max(1.0, before[k]));
    }
  }
}

TEST_CASE("is_physical") {
  CHECK(is_physical(CovarianceMatrix(Eigen::MatrixXd::Identity(2, 2))));
  CHECK_FALSE(is_physical(CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(2, 2))));
  CHECK(is_physical(single_mode_cov({0.3, 1.0, kPi / 8.0})));
}

TEST_CASE("wigner_eval values and symmetry") {
  const GaussianState vacuum(Eigen::VectorXd::Zero(2),
                             CovarianceMatrix(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(wigner_eval(vacuum, Eigen::VectorXd::Zero(2)) ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));

  std::mt19937_64 rng(14);
  Eigen::VectorXd mean(2);
  mean << 0.7, -1.3;
  const GaussianState shifted(mean, single_mode_cov({0.8, 0.5, 0.2}));
  for (int i = 0; i < 20; ++i) {
    Eigen::VectorXd delta(2);
    delta << uniform_in(rng, -2.0, 2.0), uniform_in(rng, -2.0, 2.0);
    const double lhs = wigner_eval(shifted, mean + delta);
    const double rhs = wigner_eval(shifted, mean - delta);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }

  Eigen::VectorXd wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS(wigner_eval(vacuum, wrong), std::invalid_argument);

  Eigen::MatrixXd singular(2, 2);
  singular << 1.0, 1.0, 1.0, 1.0;
  const GaussianState bad(Eigen::VectorXd::Zero(2), CovarianceMatrix(singular));
  CHECK_THROWS_AS(wigner_eval(bad, Eigen::VectorXd::Zero(2)), numeric_error);
}

TEST_CASE("wigner_eval integrates to one, vacuum quadrature") {
  const GaussianState vacuum(Eigen::VectorXd::Zero(2),
                             CovarianceMatrix(Eigen::MatrixXd::Identity(2, 2)));
  const double integral = oracle::wigner_box_integral(vacuum, 8.0, 0.05);
  CHECK(std::abs(integral - 1.0) <= 1e-6);
}

TEST_CASE("wigner_eval integrates to one, random single-mode states") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 3; ++i) {
    const GaussianState state(
        Eigen::VectorXd::Zero(2),
        single_mode_cov({uniform_in(rng, 0.5, 1.0), uniform_in(rng, -0.8, 0.8),
                         uniform_in(rng, 0.0, kPi / 4.0)}));
    const double integral = oracle::wigner_box_integral(state, 10.0, 0.1);
    CHECK(std::abs(integral - 1.0) <= 1e-5);
  }
}

TEST_CASE("wigner_eval integrates to one, correlated two-mode states") {
  // Mildly squeezed products pushed through the coordinate change, so the
  // quadrature sees genuine cross-mode correlations.
  std::mt19937_64 rng(18);
  for (int i = 0; i < 2; ++i) {
    const ParticleSystem sys({uniform_in(rng, 0.35, 0.65), 1.0});
    const CovarianceMatrix v_ext =
        direct_sum(single_mode_cov({uniform_in(rng, 0.8, 1.0), uniform_in(rng, 0.0, 0.4),
                                    uniform_in(rng, 0.0, kPi / 4.0)}),
                   single_mode_cov({uniform_in(rng, 0.8, 1.0), uniform_in(rng, 0.0, 0.4),
                                    uniform_in(rng, 0.0, kPi / 4.0)}));
    const CovarianceMatrix v = transform_cov(v_ext, cmr_matrix(sys));
    const GaussianState state(Eigen::VectorXd::Zero(4), v);
    const double integral = oracle::wigner_box_integral(state, 12.0, 0.5);
    CHECK(std::abs(integral - 1.0) <= 1e-5);
  }
}

TEST_CASE("direct_sum blocks and spectra") {
  const CovarianceMatrix id2(Eigen::MatrixXd::Identity(2, 2));
  const CovarianceMatrix sum = direct_sum(id2, id2);
  CHECK(oracle::max_abs(sum.mat() - Eigen::MatrixXd::Identity(4, 4)) == 0.0);

  std::mt19937_64 rng(16);
  const CovarianceMatrix a = oracle::random_physical_cov(rng, 1);
  const CovarianceMatrix b = oracle::random_physical_cov(rng, 2);
  const CovarianceMatrix ab = direct_sum(a, b);
  CHECK(ab.mat().determinant() ==
        doctest::Approx(a.mat().determinant() * b.mat().determinant()).epsilon(1e-10));

  auto eigs_a = symplectic_eigenvalues(a);
  auto eigs_b = symplectic_eigenvalues(b);
  std::vector<double> merged(eigs_a);
  merged.insert(merged.end(), eigs_b.begin(), eigs_b.end());
  std::sort(merged.begin(), merged.end(), std::greater<>());
  const auto eigs_ab = symplectic_eigenvalues(ab);
  for (std::size_t k = 0; k < merged.size(); ++k) {
    CHECK(eigs_ab[k] == doctest::Approx(merged[k]).epsilon(1e-10));
  }
}

TEST_CASE("gaussian state mean length must match") {
  CHECK_THROWS_AS(GaussianState(Eigen::VectorXd::Zero(3),
                                CovarianceMatrix(Eigen::MatrixXd::Identity(4, 4))),
                  std::invalid_argument);
}

TEST_CASE("iOmegaV route agrees with the matrix-root route") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = uniform_int(rng, 1, 4);
    const CovarianceMatrix v = oracle::random_physical_cov(rng, n);
    const auto fast = symplectic_eigenvalues(v);
    const auto ref = oracle::sympl_eigs_sqrt_route(v);
    for (std::size_t k = 0; k < fast.size(); ++k) {
      CHECK(std::abs(fast[k] - ref[k]) <= 1e-8 * std::max(1.0, ref[k]));
    }
  }
}
