#include "rqf/partition.hpp"

#include <algorithm>
#include <cmath>

namespace rqf {
namespace {

// Kahan summation; the fractions of wildly different masses must still sum
// to 1 at the 1e-12 level demanded of the symplectic check.
double compensated_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : xs) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

ParticleSystem::ParticleSystem(std::vector<double> masses, int reference)
    : masses_(std::move(masses)), reference_(reference), total_(0.0) {
  if (masses_.size() < 2) {
    throw std::invalid_argument("ParticleSystem: need at least two particles");
  }
  for (double m : masses_) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument("ParticleSystem: masses must be strictly positive");
    }
  }
  if (reference_ < 1 || reference_ > count()) {
    throw std::invalid_argument("ParticleSystem: reference index out of range");
  }
  total_ = compensated_sum(masses_);
}

std::vector<double> ParticleSystem::mass_fractions() const {
  std::vector<double> out(masses_.size());
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    out[i] = masses_[i] / total_;
  }
  return out;
}

PartitionTransform::PartitionTransform(int n_particles, Eigen::MatrixXd mat)
    : n_particles_(n_particles), mat_(std::move(mat)) {
  if (n_particles_ < 2 || mat_.rows() != 2 * n_particles_ || mat_.cols() != 2 * n_particles_) {
    throw std::invalid_argument("PartitionTransform: matrix must be 2N x 2N");
  }
  const Eigen::MatrixXd omega = symplectic_form(n_particles_);
  const double err = (mat_ * omega * mat_.transpose() - omega).cwiseAbs().maxCoeff();
  if (err > 1e-12) {
    throw std::invalid_argument("PartitionTransform: matrix is not symplectic");
  }
}

PartitionTransform cmr_matrix(const ParticleSystem& sys) {
  const int n = sys.count();
  const int ref = sys.reference() - 1;
  const std::vector<double> frac = sys.mass_fractions();

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    m(0, 2 * k) = frac[static_cast<std::size_t>(k)];  // x_cm
    m(1, 2 * k + 1) = 1.0;                            // p_cm
  }
  int row = 2;
  for (int i = 0; i < n; ++i) {
    if (i == ref) continue;
    m(row, 2 * i) = 1.0;
    m(row, 2 * ref) = -1.0;
    for (int k = 0; k < n; ++k) {
      m(row + 1, 2 * k + 1) = (k == i ? 1.0 : 0.0) - frac[static_cast<std::size_t>(i)];
    }
    row += 2;
  }
  return PartitionTransform(n, std::move(m));
}

CovarianceMatrix transform_cov(const CovarianceMatrix& v, const PartitionTransform& t) {
  if (v.mat().rows() != t.mat().rows()) {
    throw std::invalid_argument("transform_cov: dimension mismatch");
  }
  return CovarianceMatrix(t.mat() * v.mat() * t.mat().transpose());
}

Eigen::VectorXd transform_mean(const Eigen::VectorXd& mean, const PartitionTransform& t) {
  if (mean.size() != t.mat().rows()) {
    throw std::invalid_argument("transform_mean: dimension mismatch");
  }
  return t.mat() * mean;
}

CovarianceMatrix delete_modes(const CovarianceMatrix& v, const std::set<int>& modes) {
  const int n = v.modes();
  if (modes.empty()) {
    throw std::invalid_argument("delete_modes: empty mode set");
  }
  if (static_cast<int>(modes.size()) >= n) {
    throw std::invalid_argument("delete_modes: cannot delete every mode");
  }
  for (int m : modes) {
    if (m < 1 || m > n) {
      throw std::invalid_argument("delete_modes: mode index out of range");
    }
  }
  std::vector<Eigen::Index> keep;
  for (int m = 1; m <= n; ++m) {
    if (modes.count(m) != 0) continue;
    keep.push_back(2 * (m - 1));
    keep.push_back(2 * (m - 1) + 1);
  }
  Eigen::MatrixXd out(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v.mat()(keep[i], keep[j]);
    }
  }
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix relational_cov(const ParticleSystem& sys,
                                const std::vector<SingleModeParams>& per_particle) {
  if (static_cast<int>(per_particle.size()) != sys.count()) {
    throw std::invalid_argument("relational_cov: one parameter set per particle required");
  }
  CovarianceMatrix v_ext = single_mode_cov(per_particle[0]);
  for (std::size_t i = 1; i < per_particle.size(); ++i) {
    v_ext = direct_sum(v_ext, single_mode_cov(per_particle[i]));
  }
  const CovarianceMatrix v_cmr = transform_cov(v_ext, cmr_matrix(sys));
  return delete_modes(v_cmr, {1});
}

}  // namespace rqf
