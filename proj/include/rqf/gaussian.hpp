#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

// Phase-space conventions used throughout the library:
//   - mode ordering (q1, p1, ..., qn, pn)
//   - hbar = 1, vacuum covariance = identity
//   - single-mode purity mu = 1/sqrt(det V), mu in (0, 1]

namespace rqf {

// Raised when a numerical routine cannot deliver a trustworthy result
// (eigensolver non-convergence, singular or non-positive determinant, ...).
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n-fold direct sum of omega = [[0, 1], [-1, 0]]; satisfies Omega^2 = -I.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Parameters of the general single-mode covariance matrix
/// (1/mu) R(theta) S(2r) R(theta)^T: purity, squeezing, phase rotation.
struct SingleModeParams {
  double mu = 1.0;
  double r = 0.0;
  double theta = 0.0;
};

// Real symmetric 2n x 2n matrix of second moments. Construction checks the
// shape and symmetry (1e-12, relative to the largest entry); physicality is
// a separate tolerance-parameterized query, see is_physical().
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd entries);

  int modes() const { return static_cast<int>(mat_.rows()) / 2; }
  const Eigen::MatrixXd& mat() const { return mat_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

 private:
  Eigen::MatrixXd mat_;
};

/// Mean vector plus covariance; the mean length must be twice the mode count.
struct GaussianState {
  GaussianState(Eigen::VectorXd mean_in, CovarianceMatrix cov_in);

  Eigen::VectorXd mean;
  CovarianceMatrix cov;
};

/// 2x2 covariance (1/mu) [[cosh2r - cos2t sinh2r, sin2t sinh2r],
///                        [sin2t sinh2r, cosh2r + cos2t sinh2r]].
CovarianceMatrix single_mode_cov(const SingleModeParams& p);

// Moduli of the eigenvalues of i*Omega*V. The raw spectrum carries each
// modulus twice (conjugate pairs); pairs are collapsed to their midpoint and
// returned in descending order. Pairing failures beyond 1e-9 raise
// numeric_error.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v);

/// True iff the smallest symplectic eigenvalue is >= 1 - tol.
bool is_physical(const CovarianceMatrix& v, double tol = 1e-9);

/// Gaussian Wigner function exp(-(x-m)^T V^{-1} (x-m) / 2) / ((2pi)^n sqrt(det V)).
double wigner_eval(const GaussianState& s, const Eigen::VectorXd& x);

/// Block-diagonal concatenation; mode counts add.
CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b);

}  // namespace rqf
