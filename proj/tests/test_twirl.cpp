#include "rqf/twirl.hpp"

#include "rqf/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace rqf;
using Complex = std::complex<double>;

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd composed_expectation(const FiniteBipartiteState& s) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(s.d_cm, s.d_cm);
  return kron(id / static_cast<double>(s.d_cm), relational_state(s));
}

double min_eigenvalue(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("state factory validates its invariants") {
  const auto good = random_bipartite_state(3, 2, 5);
  CHECK_NOTHROW(make_bipartite_state(3, 2, good.rho));

  Eigen::MatrixXcd not_hermitian = good.rho;
  not_hermitian(0, 1) += Complex(0.0, 1e-3);
  CHECK_THROWS_AS(make_bipartite_state(3, 2, not_hermitian), std::invalid_argument);

  CHECK_THROWS_AS(make_bipartite_state(3, 2, 2.0 * good.rho), std::invalid_argument);

  Eigen::MatrixXcd negative = Eigen::MatrixXcd::Zero(6, 6);
  negative.diagonal().setConstant(Complex(0.3, 0.0));
  negative(5, 5) = Complex(-0.5, 0.0);
  CHECK_THROWS_AS(make_bipartite_state(3, 2, negative), std::invalid_argument);

  CHECK_THROWS_AS(make_bipartite_state(0, 2, good.rho), std::invalid_argument);
  CHECK_THROWS_AS(make_bipartite_state(2, 2, good.rho), std::invalid_argument);
}

TEST_CASE("random states are reproducible and valid") {
  const auto a = random_bipartite_state(4, 3, 99);
  const auto b = random_bipartite_state(4, 3, 99);
  CHECK(oracle::max_abs_c(a.rho - b.rho) == 0.0);
  CHECK_NOTHROW(make_bipartite_state(4, 3, a.rho));

  const auto c = random_bipartite_state(4, 3, 100);
  CHECK(oracle::max_abs_c(a.rho - c.rho) > 1e-3);
}

TEST_CASE("built-in actions are unitary and cyclic") {
  for (const auto* kind : {"translation", "boost"}) {
    const int d_cm = 5;
    const int d_r = 2;
    const FiniteGroupAction action = (kind == std::string("translation"))
                                         ? translation_phase_action(d_cm, d_r)
                                         : boost_shift_action(d_cm, d_r);
    REQUIRE(action.unitaries.size() == static_cast<std::size_t>(d_cm));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d_cm * d_r, d_cm * d_r);
    for (const auto& u : action.unitaries) {
      CHECK(oracle::max_abs_c(u.adjoint() * u - id) <= 1e-12);
    }
    for (int g = 0; g < d_cm; ++g) {
      for (int h = 0; h < d_cm; ++h) {
        const Eigen::MatrixXcd prod = action.unitaries[static_cast<std::size_t>(g)] *
                                      action.unitaries[static_cast<std::size_t>(h)];
        const auto& closed = action.unitaries[static_cast<std::size_t>((g + h) % d_cm)];
        CHECK(oracle::max_abs_c(prod - closed) <= 1e-12);
      }
    }
  }

  Eigen::MatrixXcd shrink = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(make_group_action({shrink}), std::invalid_argument);
}

TEST_CASE("compact twirl basics") {
  const auto s = random_bipartite_state(2, 2, 7);

  const FiniteGroupAction trivial =
      make_group_action({Eigen::MatrixXcd::Identity(4, 4)});
  CHECK(oracle::max_abs_c(compact_twirl(s.rho, trivial) - s.rho) == 0.0);

  const FiniteGroupAction action = translation_phase_action(2, 2);
  const Eigen::MatrixXcd once = compact_twirl(s.rho, action);
  const Eigen::MatrixXcd twice = compact_twirl(once, action);
  CHECK(oracle::max_abs_c(twice - once) <= 1e-12);
  for (const auto& u : action.unitaries) {
    CHECK(oracle::max_abs_c(u * once * u.adjoint() - once) <= 1e-10);
  }

  CHECK_THROWS_AS(compact_twirl(Eigen::MatrixXcd::Identity(2, 2), action),
                  std::invalid_argument);
}

TEST_CASE("translation twirl dephases the CM index") {
  // CM part (|0> + |1>)(<0| + <1|)/2 against a fixed relative state.
  Eigen::MatrixXcd cm = Eigen::MatrixXcd::Constant(2, 2, Complex(0.5, 0.0));
  Eigen::MatrixXcd sigma(2, 2);
  sigma << Complex(0.75, 0.0), Complex(0.1, 0.2),  //
      Complex(0.1, -0.2), Complex(0.25, 0.0);
  const auto state = make_bipartite_state(2, 2, kron(cm, sigma));
  const auto out = translation_twirl(state);

  Eigen::MatrixXcd cm_diag = Eigen::MatrixXcd::Zero(2, 2);
  cm_diag(0, 0) = cm_diag(1, 1) = Complex(0.5, 0.0);
  CHECK(oracle::max_abs_c(out.rho - kron(cm_diag, sigma)) <= 1e-14);

  // Already CM-diagonal states are fixed points.
  const auto again = translation_twirl(out);
  CHECK(oracle::max_abs_c(again.rho - out.rho) <= 1e-13);
}

TEST_CASE("translation twirl equals the masking oracle") {
  const auto s = random_bipartite_state(4, 3, 11);
  const auto out = translation_twirl(s);
  CHECK(oracle::max_abs_c(out.rho - oracle::mask_cm_offdiagonal(s.rho, 4, 3)) <= 1e-12);
}

TEST_CASE("boost twirl spreads the CM index uniformly") {
  const int d_cm = 4;
  Eigen::MatrixXcd cm_point = Eigen::MatrixXcd::Zero(d_cm, d_cm);
  cm_point(0, 0) = 1.0;
  Eigen::MatrixXcd sigma(2, 2);
  sigma << Complex(0.6, 0.0), Complex(0.0, 0.1),  //
      Complex(0.0, -0.1), Complex(0.4, 0.0);
  const auto state = make_bipartite_state(d_cm, 2, kron(cm_point, sigma));
  const auto out = boost_twirl(state);

  const Eigen::MatrixXcd uniform =
      kron(Eigen::MatrixXcd::Identity(d_cm, d_cm) / d_cm, sigma);
  CHECK(oracle::max_abs_c(out.rho - uniform) <= 1e-13);

  const auto fixed = boost_twirl(out);
  CHECK(oracle::max_abs_c(fixed.rho - out.rho) <= 1e-13);
}

TEST_CASE("composed twirl factorizes into identity times the relative state") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int d_cm = 2 + static_cast<int>(seed % 5);
    const int d_r = 2 + static_cast<int>((seed / 2) % 3);
    const auto s = random_bipartite_state(d_cm, d_r, seed);
    const auto composed = boost_twirl(translation_twirl(s));
    CHECK(oracle::max_abs_c(composed.rho - composed_expectation(s)) <= 1e-12);

    // No relational information is lost along the way.
    CHECK(oracle::max_abs_c(relational_state(composed) - relational_state(s)) <= 1e-12);
  }
}

TEST_CASE("twirls preserve trace and positivity and commute") {
  for (std::uint64_t seed = 21; seed <= 26; ++seed) {
    const auto s = random_bipartite_state(3, 2, seed);
    const auto a = translation_twirl(boost_twirl(s));
    const auto b = boost_twirl(translation_twirl(s));
    CHECK(oracle::max_abs_c(a.rho - b.rho) <= 1e-11);
    CHECK(std::abs(a.rho.trace().real() - 1.0) <= 1e-11);
    CHECK(std::abs(a.rho.trace().imag()) <= 1e-13);
    CHECK(min_eigenvalue(a.rho) >= -1e-10);

    const auto idem = translation_twirl(translation_twirl(s));
    CHECK(oracle::max_abs_c(idem.rho - translation_twirl(s).rho) <= 1e-11);
    const auto idem_b = boost_twirl(boost_twirl(s));
    CHECK(oracle::max_abs_c(idem_b.rho - boost_twirl(s).rho) <= 1e-11);
  }
}

TEST_CASE("relational state against the contraction oracle") {
  const auto s = random_bipartite_state(5, 3, 31);
  CHECK(oracle::max_abs_c(relational_state(s) - oracle::contract_cm(s.rho, 5, 3)) <= 1e-13);

  // Product states reduce to their relative factor.
  Eigen::MatrixXcd cm = Eigen::MatrixXcd::Zero(3, 3);
  cm.diagonal() << Complex(0.2, 0.0), Complex(0.3, 0.0), Complex(0.5, 0.0);
  Eigen::MatrixXcd sigma(2, 2);
  sigma << Complex(0.7, 0.0), Complex(0.2, 0.05),  //
      Complex(0.2, -0.05), Complex(0.3, 0.0);
  const auto product = make_bipartite_state(3, 2, kron(cm, sigma));
  CHECK(oracle::max_abs_c(relational_state(product) - sigma) <= 1e-14);

  // Maximally entangled pair reduces to the maximally mixed state.
  const int d = 3;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
  for (int k = 0; k < d; ++k) psi(k * d + k) = Complex(1.0 / std::sqrt(3.0), 0.0);
  const auto bell = make_bipartite_state(d, d, psi * psi.adjoint());
  CHECK(oracle::max_abs_c(relational_state(bell) -
                          Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d)) <= 1e-14);
}

TEST_CASE("divergence scan grows as the squared group size") {
  const auto s = random_bipartite_state(2, 3, 31415);
  const auto points = divergence_scan(s, {2, 4, 8, 16});
  REQUIRE(points.size() == 4);
  for (const auto& p : points) {
    CHECK(std::abs(p.trace - static_cast<double>(p.d_cm) * p.d_cm) <=
          1e-12 * p.d_cm * p.d_cm);
  }

  // Log-log slope of trace vs d_cm.
  const double slope = (std::log(points[3].trace) - std::log(points[0].trace)) /
                       (std::log(16.0) - std::log(2.0));
  CHECK(std::abs(slope - 2.0) <= 1e-9);

  const std::string csv = divergence_csv(points);
  CHECK(csv.rfind("d_cm,trace\n", 0) == 0);
  CHECK(csv.find("\n2,4\n") != std::string::npos);
}
