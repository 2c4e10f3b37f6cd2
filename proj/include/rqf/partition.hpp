#pragma once

#include "rqf/gaussian.hpp"

#include <set>
#include <vector>

namespace rqf {

// N >= 2 strictly positive masses plus the 1-based index of the particle that
// the relative degrees of freedom refer to. Masses may differ by many orders
// of magnitude; downstream code works with mass fractions m_i / M.
class ParticleSystem {
 public:
  explicit ParticleSystem(std::vector<double> masses, int reference = 1);

  int count() const { return static_cast<int>(masses_.size()); }
  int reference() const { return reference_; }
  const std::vector<double>& masses() const { return masses_; }
  double total_mass() const { return total_; }
  /// m_i / M, compensated total; sums to 1 within a few ulps.
  std::vector<double> mass_fractions() const;

 private:
  std::vector<double> masses_;
  int reference_;
  double total_;
};

// Linear symplectic change of coordinates between the per-particle partition
// and the (center of mass, relative) partition. Construction enforces
// M Omega M^T = Omega to 1e-12.
class PartitionTransform {
 public:
  PartitionTransform(int n_particles, Eigen::MatrixXd mat);

  int particles() const { return n_particles_; }
  const Eigen::MatrixXd& mat() const { return mat_; }

 private:
  int n_particles_;
  Eigen::MatrixXd mat_;
};

// Rows, in order: x_cm = sum_n (m_n/M) x_n; p_cm = sum_n p_n; then for every
// particle i != reference, ascending, x_{i|ref} = x_i - x_ref and
// p_{i|ref} = p_i - (m_i/M) p_total. The relative momenta are the (non-unique)
// choice that keeps [x_{i|ref}, p_{j|ref}] = i delta_ij.
PartitionTransform cmr_matrix(const ParticleSystem& sys);

/// T V T^T; preserves symplectic spectrum, determinant, and purity.
CovarianceMatrix transform_cov(const CovarianceMatrix& v, const PartitionTransform& t);

/// T x; means transform linearly.
Eigen::VectorXd transform_mean(const Eigen::VectorXd& mean, const PartitionTransform& t);

// Gaussian partial trace: drop the listed modes (1-based), keep the rest in
// their original order. The set must be a non-empty strict subset.
CovarianceMatrix delete_modes(const CovarianceMatrix& v, const std::set<int>& modes);

// Covariance of the relative degrees of freedom for a product of single-mode
// inputs: assemble the direct sum, apply cmr_matrix, trace out the center of
// mass. (2N-2) x (2N-2) output.
CovarianceMatrix relational_cov(const ParticleSystem& sys,
                                const std::vector<SingleModeParams>& per_particle);

}  // namespace rqf
