#pragma once

#include "rqf/gaussian.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace rqf {

// 1-based mode-index split; must be a disjoint, non-empty cover of the modes
// of the matrix it is applied to.
struct Bipartition {
  std::set<int> modes_a;
  std::set<int> modes_b;
};

// P V P with P diagonal, -1 exactly at the momentum rows of modes_b,
// +1 elsewhere; for two modes with modes_b = {2} this is diag(1,1,1,-1).
CovarianceMatrix partial_transpose(const CovarianceMatrix& v, const Bipartition& split);

// Gaussian logarithmic negativity across the split, natural logarithm:
// -sum log(nu_k) over symplectic eigenvalues nu_k of the partially transposed
// matrix with nu_k < 1 - 1e-12. The 1e-12 guard keeps eigenvalues at the
// separability threshold from contributing round-off negativity.
double log_negativity(const CovarianceMatrix& v, const Bipartition& split,
                      double physicality_tol = 1e-9);

/// 1/sqrt(det V); equals 1 iff every symplectic eigenvalue is 1.
double purity(const CovarianceMatrix& v);

// Closed-form purity expressions for the two-particle relative state, in
// terms of f_i^{+-} = cosh 2r_i +- cos 2theta_i sinh 2r_i and
// g_i = sin 2theta_i sinh 2r_i. These are transcribed reference formulas; the
// audit measures how well each reproduces the matrix pipeline and never
// adjusts them (several are known to deviate, see the audit report).
namespace purity_forms {
double general(double m1_frac, const SingleModeParams& p1, const SingleModeParams& p2);
double pure_inputs(double m1_frac, double r1, double theta1, double r2, double theta2);
double equal_mass(double r1, double theta1, double r2, double theta2);
double equal_parameters(double m1_frac, double r, double theta);
double infinite_mass(double r, double theta);
}  // namespace purity_forms

struct AuditRecord {
  std::string formula;
  std::string regime;  // sampled parameter ranges
  int samples = 0;
  double max_rel_dev = 0.0;
  bool match = false;  // max_rel_dev <= 1e-6
  std::string note;
};

struct AuditReport {
  std::vector<AuditRecord> records;

  std::string to_text() const;
  /// Columns: formula,samples,max_rel_dev,status
  std::string to_csv() const;
};

// Evaluate every closed form of purity_forms on seeded random parameter
// draws inside its regime and compare against purity(relational_cov(...)).
// One record per formula, in declaration order; deterministic in
// (seed, samples). The infinite-mass form is sampled at m2/M in
// {1 - 1e-4, 1 - 1e-6} and its record carries an extrapolation note.
AuditReport audit_purity_forms(std::uint64_t seed, int samples);

// Companion identity check run alongside the audit: max relative deviation of
// purity(V_cmr) from mu1 * mu2 over seeded random draws. An identity of the
// pipeline itself, expected at rounding level (<= 1e-12).
double audit_cmr_product_rule(std::uint64_t seed, int samples);

}  // namespace rqf
