#include "rqf/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rqf {
namespace {

constexpr double kPairTol = 1e-9;  // conjugate-pair matching in |eig(Omega V)|

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("symplectic_form: mode count must be >= 1");
  }
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 2 || mat_.rows() % 2 != 0) {
    throw std::invalid_argument("CovarianceMatrix: need a square 2n x 2n matrix");
  }
  if (!mat_.allFinite()) {
    throw std::invalid_argument("CovarianceMatrix: non-finite entries");
  }
  const double asym = max_abs(mat_ - mat_.transpose());
  if (asym > 1e-12 * std::max(1.0, max_abs(mat_))) {
    throw std::invalid_argument("CovarianceMatrix: matrix is not symmetric");
  }
}

GaussianState::GaussianState(Eigen::VectorXd mean_in, CovarianceMatrix cov_in)
    : mean(std::move(mean_in)), cov(std::move(cov_in)) {
  if (mean.size() != 2 * cov.modes()) {
    throw std::invalid_argument("GaussianState: mean length must be 2 x mode count");
  }
}

CovarianceMatrix single_mode_cov(const SingleModeParams& p) {
  if (!(p.mu > 0.0) || p.mu > 1.0) {
    throw std::invalid_argument("single_mode_cov: purity must lie in (0, 1]");
  }
  const double ch = std::cosh(2.0 * p.r);
  const double sh = std::sinh(2.0 * p.r);
  const double c = std::cos(2.0 * p.theta);
  const double s = std::sin(2.0 * p.theta);
  Eigen::Matrix2d v;
  v << ch - c * sh, s * sh,  //
      s * sh, ch + c * sh;
  return CovarianceMatrix(v / p.mu);
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
  const int n = v.modes();
  const Eigen::MatrixXd a = symplectic_form(n) * v.mat();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("symplectic_eigenvalues: eigensolver did not converge");
  }
  std::vector<double> mods(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < 2 * n; ++i) {
    mods[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
  }
  std::sort(mods.begin(), mods.end(), std::greater<>());

  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double hi = mods[static_cast<std::size_t>(2 * k)];
    const double lo = mods[static_cast<std::size_t>(2 * k + 1)];
    if (hi - lo > kPairTol * std::max(1.0, hi)) {
      throw numeric_error("symplectic_eigenvalues: conjugate-pair matching failed");
    }
    out[static_cast<std::size_t>(k)] = 0.5 * (hi + lo);
  }
  return out;
}

bool is_physical(const CovarianceMatrix& v, double tol) {
  const auto nu = symplectic_eigenvalues(v);
  return nu.back() >= 1.0 - tol;
}

double wigner_eval(const GaussianState& s, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd& v = s.cov.mat();
  if (x.size() != v.rows()) {
    throw std::invalid_argument("wigner_eval: phase-space point has wrong length");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(v);
  if (llt.info() != Eigen::Success) {
    throw numeric_error("wigner_eval: covariance matrix is not positive definite");
  }
  double log_det = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i) > 0.0)) {
      throw numeric_error("wigner_eval: covariance matrix is singular");
    }
    log_det += 2.0 * std::log(l(i, i));
  }
  const Eigen::VectorXd d = x - s.mean;
  const double quad = d.dot(llt.solve(d));
  const double n = static_cast<double>(s.cov.modes());
  return std::exp(-0.5 * quad - 0.5 * log_det - n * std::log(2.0 * std::numbers::pi));
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  const Eigen::Index na = a.mat().rows();
  const Eigen::Index nb = b.mat().rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(na + nb, na + nb);
  out.topLeftCorner(na, na) = a.mat();
  out.bottomRightCorner(nb, nb) = b.mat();
  return CovarianceMatrix(std::move(out));
}

}  // namespace rqf
