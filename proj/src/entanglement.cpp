#include "rqf/entanglement.hpp"

#include "rqf/format.hpp"
#include "rqf/partition.hpp"
#include "rqf/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rqf {
namespace {

constexpr double kUnityGuard = 1e-12;   // eigenvalues this close to 1 contribute 0
constexpr double kMatchTol = 1e-6;      // audit match/mismatch threshold

void check_split(const Bipartition& split, int n_modes) {
  if (split.modes_a.empty() || split.modes_b.empty()) {
    throw std::invalid_argument("Bipartition: both sides must be non-empty");
  }
  if (static_cast<int>(split.modes_a.size() + split.modes_b.size()) != n_modes) {
    throw std::invalid_argument("Bipartition: sides must cover every mode exactly once");
  }
  for (int m = 1; m <= n_modes; ++m) {
    const bool in_a = split.modes_a.count(m) != 0;
    const bool in_b = split.modes_b.count(m) != 0;
    if (in_a == in_b) {
      throw std::invalid_argument("Bipartition: sides must be disjoint and cover every mode");
    }
  }
}

}  // namespace

CovarianceMatrix partial_transpose(const CovarianceMatrix& v, const Bipartition& split) {
  const int n = v.modes();
  check_split(split, n);
  Eigen::VectorXd sign = Eigen::VectorXd::Ones(2 * n);
  for (int m : split.modes_b) {
    sign(2 * (m - 1) + 1) = -1.0;
  }
  Eigen::MatrixXd out = v.mat();
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) *= sign(i) * sign(j);
    }
  }
  return CovarianceMatrix(std::move(out));
}

double log_negativity(const CovarianceMatrix& v, const Bipartition& split,
                      double physicality_tol) {
  if (!is_physical(v, physicality_tol)) {
    throw std::invalid_argument("log_negativity: covariance matrix is not a physical state");
  }
  const CovarianceMatrix pt = partial_transpose(v, split);
  double sum = 0.0;
  for (double nu : symplectic_eigenvalues(pt)) {
    if (nu < 1.0 - kUnityGuard) {
      sum -= std::log(nu);
    }
  }
  return sum;
}

double purity(const CovarianceMatrix& v) {
  const double det = v.mat().determinant();
  if (!std::isfinite(det) || !(det > 0.0)) {
    throw numeric_error("purity: determinant is not positive");
  }
  return 1.0 / std::sqrt(det);
}

// ---------------------------------------------------------------------------
// Closed-form purity expressions and their audit
// ---------------------------------------------------------------------------

namespace purity_forms {
namespace {

struct HyperbolicTerms {
  double f_plus;
  double f_minus;
  double g;
};

HyperbolicTerms terms(double r, double theta) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return {ch + std::cos(2.0 * theta) * sh, ch - std::cos(2.0 * theta) * sh,
          std::sin(2.0 * theta) * sh};
}

double from_inverse_square(double inv_sq) {
  if (!std::isfinite(inv_sq) || !(inv_sq > 0.0)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return 1.0 / std::sqrt(inv_sq);
}

}  // namespace

double general(double m1_frac, const SingleModeParams& p1, const SingleModeParams& p2) {
  const double m1 = m1_frac;
  const double m2 = 1.0 - m1_frac;
  const auto t1 = terms(p1.r, p1.theta);
  const auto t2 = terms(p2.r, p2.theta);
  const double mu1 = p1.mu;
  const double mu2 = p2.mu;
  const double bracket =
      mu2 * mu2 * m2 * m2 * t1.f_minus * t1.f_plus +
      mu1 * mu2 * (m1 * m1 * t1.f_minus * t2.f_plus + m2 * m2 * t1.f_plus * t2.f_minus) +
      mu1 * mu1 * m1 * m1 * t2.f_minus * t2.f_plus - mu2 * mu2 * m2 * m2 * t1.g * t1.g +
      2.0 * mu1 * mu2 * m1 * m2 * t1.g * t2.g - mu1 * mu1 * m1 * m1 * t2.g * t2.g;
  return mu1 * mu2 * from_inverse_square(bracket);
}

double pure_inputs(double m1_frac, double r1, double theta1, double r2, double theta2) {
  const double m1 = m1_frac;
  const double m2 = 1.0 - m1_frac;
  const double inv_sq =
      (m2 - m1) * (std::sinh(2.0 * r1) * std::cosh(2.0 * r2) * std::cos(2.0 * theta1) -
                   std::sinh(2.0 * r2) * std::cosh(2.0 * r1) * std::cos(2.0 * theta2)) +
      (2.0 * m1 * m2 + 1.0) * std::cosh(2.0 * r1) * std::cosh(2.0 * r2) -
      std::sinh(2.0 * r1) * std::sinh(2.0 * r2) *
          (2.0 * m1 * m2 * std::cos(2.0 * (theta1 + theta2)) +
           std::cos(2.0 * theta1) * std::cos(2.0 * theta2)) +
      m1 * m1 + m2 * m2;
  return from_inverse_square(inv_sq);
}

double equal_mass(double r1, double theta1, double r2, double theta2) {
  const double inv_sq =
      0.25 * (-2.0 * std::sinh(2.0 * r1) * std::sinh(2.0 * r2) *
                  std::cos(2.0 * (theta1 - theta2)) +
              std::cosh(2.0 * (r1 - r2)) + std::cosh(2.0 * (r1 + r2)) + 2.0);
  return from_inverse_square(inv_sq);
}

double equal_parameters(double m1_frac, double r, double theta) {
  const double m1 = m1_frac;
  const double m2 = 1.0 - m1_frac;
  const double sum_sq = m1 * m1 + m2 * m2;
  const double s2t = std::sin(2.0 * theta);
  const double sh = std::sinh(2.0 * r);
  const double inv_sq = 2.0 * sum_sq + s2t * s2t * (sum_sq * sh * sh - 2.0 * m1 * m2);
  return from_inverse_square(inv_sq);
}

double infinite_mass(double r, double theta) {
  const double sh = std::sinh(2.0 * r);
  const double c2t = std::cos(2.0 * theta);
  return from_inverse_square(2.0 + sh * sh * c2t * c2t);
}

}  // namespace purity_forms

namespace {

double pipeline_purity(double m1_frac, const SingleModeParams& p1, const SingleModeParams& p2) {
  const ParticleSystem sys({m1_frac, 1.0 - m1_frac});
  return purity(relational_cov(sys, {p1, p2}));
}

// NaN-aware running maximum: a NaN deviation (formula undefined on a sample)
// must surface as mismatch, never vanish in a comparison.
void track(double dev, double& max_dev) {
  if (std::isnan(dev)) {
    max_dev = std::numeric_limits<double>::quiet_NaN();
  } else if (!std::isnan(max_dev) && dev > max_dev) {
    max_dev = dev;
  }
}

AuditRecord finish(std::string formula, std::string regime, int samples, double max_dev,
                   std::string note = {}) {
  AuditRecord rec;
  rec.formula = std::move(formula);
  rec.regime = std::move(regime);
  rec.samples = samples;
  rec.max_rel_dev = max_dev;
  rec.match = max_dev <= kMatchTol;  // NaN compares false -> mismatch
  rec.note = std::move(note);
  return rec;
}

}  // namespace

AuditReport audit_purity_forms(std::uint64_t seed, int samples) {
  if (samples < 1) {
    throw std::invalid_argument("audit_purity_forms: need at least one sample");
  }
  std::mt19937_64 rng(seed);
  const double quarter_pi = std::numbers::pi / 4.0;
  AuditReport report;

  {
    double dev = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double w = uniform_in(rng, 0.05, 0.95);
      const SingleModeParams p1{uniform_in(rng, 0.1, 1.0), uniform_in(rng, -2.0, 2.0),
                                uniform_in(rng, 0.0, quarter_pi)};
      const SingleModeParams p2{uniform_in(rng, 0.1, 1.0), uniform_in(rng, -2.0, 2.0),
                                uniform_in(rng, 0.0, quarter_pi)};
      const double ref = pipeline_purity(w, p1, p2);
      track(std::abs(purity_forms::general(w, p1, p2) - ref) / ref, dev);
    }
    report.records.push_back(finish(
        "general", "mu in [0.1,1], r in [-2,2], theta in [0,pi/4], m1/M in [0.05,0.95]",
        samples, dev));
  }
  {
    double dev = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double w = uniform_in(rng, 0.05, 0.95);
      const SingleModeParams p1{1.0, uniform_in(rng, -2.0, 2.0), uniform_in(rng, 0.0, quarter_pi)};
      const SingleModeParams p2{1.0, uniform_in(rng, -2.0, 2.0), uniform_in(rng, 0.0, quarter_pi)};
      const double ref = pipeline_purity(w, p1, p2);
      track(std::abs(purity_forms::pure_inputs(w, p1.r, p1.theta, p2.r, p2.theta) - ref) / ref,
            dev);
    }
    report.records.push_back(finish(
        "pure_inputs", "mu = 1, r in [-2,2], theta in [0,pi/4], m1/M in [0.05,0.95]", samples,
        dev));
  }
  {
    double dev = 0.0;
    for (int i = 0; i < samples; ++i) {
      const SingleModeParams p1{1.0, uniform_in(rng, -2.0, 2.0), uniform_in(rng, 0.0, quarter_pi)};
      const SingleModeParams p2{1.0, uniform_in(rng, -2.0, 2.0), uniform_in(rng, 0.0, quarter_pi)};
      const double ref = pipeline_purity(0.5, p1, p2);
      track(std::abs(purity_forms::equal_mass(p1.r, p1.theta, p2.r, p2.theta) - ref) / ref, dev);
    }
    report.records.push_back(
        finish("equal_mass", "mu = 1, m1 = m2, r in [-2,2], theta in [0,pi/4]", samples, dev));
  }
  {
    double dev = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double w = uniform_in(rng, 0.05, 0.95);
      const SingleModeParams p{1.0, uniform_in(rng, -2.0, 2.0), uniform_in(rng, 0.0, quarter_pi)};
      const double ref = pipeline_purity(w, p, p);
      track(std::abs(purity_forms::equal_parameters(w, p.r, p.theta) - ref) / ref, dev);
    }
    report.records.push_back(finish(
        "equal_parameters", "mu = 1, r1 = r2, theta1 = theta2, m1/M in [0.05,0.95]", samples,
        dev));
  }
  {
    double dev = 0.0;
    double dev_coarse = 0.0;  // m2/M = 1 - 1e-4
    double dev_fine = 0.0;    // m2/M = 1 - 1e-6
    for (int i = 0; i < samples; ++i) {
      const double m2_frac = (i % 2 == 0) ? 1.0 - 1e-4 : 1.0 - 1e-6;
      const SingleModeParams p{1.0, uniform_in(rng, -2.0, 2.0), uniform_in(rng, 0.0, quarter_pi)};
      const double ref = pipeline_purity(1.0 - m2_frac, p, p);
      const double d = std::abs(purity_forms::infinite_mass(p.r, p.theta) - ref) / ref;
      track(d, dev);
      track(d, (i % 2 == 0) ? dev_coarse : dev_fine);
    }
    std::string note;
    if (std::isnan(dev_fine) || std::isnan(dev_coarse) || dev_fine > 0.1 * dev_coarse) {
      note = "deviation persists as m2/M -> 1 (1-1e-4: " + format_e3(dev_coarse) +
             ", 1-1e-6: " + format_e3(dev_fine) + "); not a finite-mass artifact";
    } else {
      note = "deviation shrinks with the mass gap (1-1e-4: " + format_e3(dev_coarse) +
             ", 1-1e-6: " + format_e3(dev_fine) + "); consistent with the limit";
    }
    report.records.push_back(finish(
        "infinite_mass", "mu = 1, r1 = r2, theta1 = theta2, m2/M in {1-1e-4, 1-1e-6}", samples,
        dev, std::move(note)));
  }
  return report;
}

double audit_cmr_product_rule(std::uint64_t seed, int samples) {
  if (samples < 1) {
    throw std::invalid_argument("audit_cmr_product_rule: need at least one sample");
  }
  std::mt19937_64 rng(seed);
  const double quarter_pi = std::numbers::pi / 4.0;
  double dev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double w = uniform_in(rng, 0.05, 0.95);
    const SingleModeParams p1{uniform_in(rng, 0.1, 1.0), uniform_in(rng, -2.0, 2.0),
                              uniform_in(rng, 0.0, quarter_pi)};
    const SingleModeParams p2{uniform_in(rng, 0.1, 1.0), uniform_in(rng, -2.0, 2.0),
                              uniform_in(rng, 0.0, quarter_pi)};
    const ParticleSystem sys({w, 1.0 - w});
    const CovarianceMatrix v_cmr = transform_cov(
        direct_sum(single_mode_cov(p1), single_mode_cov(p2)), cmr_matrix(sys));
    const double expected = p1.mu * p2.mu;
    track(std::abs(purity(v_cmr) - expected) / expected, dev);
  }
  return dev;
}

std::string AuditReport::to_text() const {
  std::ostringstream out;
  out << "formula            samples  max_rel_dev  status    sampled regime\n";
  for (const auto& rec : records) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-18s %7d  %-11s  %-8s  %s\n", rec.formula.c_str(),
                  rec.samples, format_e3(rec.max_rel_dev).c_str(),
                  rec.match ? "match" : "mismatch", rec.regime.c_str());
    out << line;
  }
  for (const auto& rec : records) {
    if (!rec.note.empty()) {
      out << "note (" << rec.formula << "): " << rec.note << "\n";
    }
  }
  return out.str();
}

std::string AuditReport::to_csv() const {
  std::string out = "formula,samples,max_rel_dev,status\n";
  for (const auto& rec : records) {
    out += rec.formula;
    out += ',';
    out += std::to_string(rec.samples);
    out += ',';
    out += format_g17(rec.max_rel_dev);
    out += ',';
    out += rec.match ? "match" : "mismatch";
    out += '\n';
  }
  return out;
}

}  // namespace rqf
