#include "rqf/twirl.hpp"

#include "rqf/format.hpp"
#include "rqf/random.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace rqf {
namespace {

using Complex = std::complex<double>;

void check_dims(int d_cm, int d_r, const Eigen::MatrixXcd& rho) {
  if (d_cm < 1 || d_r < 1) {
    throw std::invalid_argument("FiniteBipartiteState: dimensions must be positive");
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(d_cm) * d_r;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("FiniteBipartiteState: matrix must be (d_cm*d_r) square");
  }
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

FiniteBipartiteState make_bipartite_state(int d_cm, int d_r, Eigen::MatrixXcd rho) {
  check_dims(d_cm, d_r, rho);
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("FiniteBipartiteState: matrix is not Hermitian");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-12) {
    throw std::invalid_argument("FiniteBipartiteState: trace must be 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("FiniteBipartiteState: matrix is not positive semidefinite");
  }
  return FiniteBipartiteState{d_cm, d_r, std::move(rho)};
}

FiniteBipartiteState random_bipartite_state(int d_cm, int d_r, std::uint64_t seed) {
  if (d_cm < 1 || d_r < 1) {
    throw std::invalid_argument("random_bipartite_state: dimensions must be positive");
  }
  std::mt19937_64 rng(seed);
  const Eigen::Index dim = static_cast<Eigen::Index>(d_cm) * d_r;
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = Complex(standard_normal(rng), standard_normal(rng));
    }
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return FiniteBipartiteState{d_cm, d_r, std::move(rho)};
}

FiniteGroupAction make_group_action(std::vector<Eigen::MatrixXcd> unitaries) {
  if (unitaries.empty()) {
    throw std::invalid_argument("FiniteGroupAction: need at least one element");
  }
  for (const auto& u : unitaries) {
    if (u.rows() != u.cols() || u.rows() < 1) {
      throw std::invalid_argument("FiniteGroupAction: elements must be square");
    }
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    if ((gram - id).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument("FiniteGroupAction: element is not unitary");
    }
  }
  return FiniteGroupAction{std::move(unitaries)};
}

FiniteGroupAction translation_phase_action(int d_cm, int d_r) {
  FiniteGroupAction action;
  const Eigen::Index dim = static_cast<Eigen::Index>(d_cm) * d_r;
  for (int g = 0; g < d_cm; ++g) {
    Eigen::VectorXcd diag(dim);
    for (int p = 0; p < d_cm; ++p) {
      const Complex phase =
          std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(g) * p / d_cm);
      for (int q = 0; q < d_r; ++q) {
        diag(static_cast<Eigen::Index>(p) * d_r + q) = phase;
      }
    }
    action.unitaries.emplace_back(diag.asDiagonal());
  }
  return action;
}

FiniteGroupAction boost_shift_action(int d_cm, int d_r) {
  FiniteGroupAction action;
  const Eigen::Index dim = static_cast<Eigen::Index>(d_cm) * d_r;
  for (int h = 0; h < d_cm; ++h) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (int p = 0; p < d_cm; ++p) {
      const int shifted = (p + h) % d_cm;
      for (int q = 0; q < d_r; ++q) {
        u(static_cast<Eigen::Index>(shifted) * d_r + q,
          static_cast<Eigen::Index>(p) * d_r + q) = 1.0;
      }
    }
    action.unitaries.push_back(std::move(u));
  }
  return action;
}

Eigen::MatrixXcd compact_twirl(const Eigen::MatrixXcd& rho, const FiniteGroupAction& action) {
  if (action.unitaries.empty()) {
    throw std::invalid_argument("compact_twirl: empty group action");
  }
  for (const auto& u : action.unitaries) {
    if (u.rows() != rho.rows() || u.cols() != rho.cols()) {
      throw std::invalid_argument("compact_twirl: dimension mismatch");
    }
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const auto& u : action.unitaries) {
    sum += u * rho * u.adjoint();
  }
  return sum / static_cast<double>(action.unitaries.size());
}

FiniteBipartiteState translation_twirl(const FiniteBipartiteState& s) {
  check_dims(s.d_cm, s.d_r, s.rho);
  return FiniteBipartiteState{s.d_cm, s.d_r,
                              compact_twirl(s.rho, translation_phase_action(s.d_cm, s.d_r))};
}

FiniteBipartiteState boost_twirl(const FiniteBipartiteState& s) {
  check_dims(s.d_cm, s.d_r, s.rho);
  return FiniteBipartiteState{s.d_cm, s.d_r,
                              compact_twirl(s.rho, boost_shift_action(s.d_cm, s.d_r))};
}

Eigen::MatrixXcd relational_state(const FiniteBipartiteState& s) {
  check_dims(s.d_cm, s.d_r, s.rho);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(s.d_r, s.d_r);
  for (int p = 0; p < s.d_cm; ++p) {
    out += s.rho.block(static_cast<Eigen::Index>(p) * s.d_r,
                       static_cast<Eigen::Index>(p) * s.d_r, s.d_r, s.d_r);
  }
  return out;
}

std::vector<DivergencePoint> divergence_scan(const FiniteBipartiteState& s,
                                             const std::vector<int>& dims) {
  const Eigen::MatrixXcd rho_r = relational_state(s);
  std::vector<DivergencePoint> points;
  points.reserve(dims.size());
  for (int d : dims) {
    if (d < 1) {
      throw std::invalid_argument("divergence_scan: dimensions must be positive");
    }
    // Re-prepare the CM factor as the uniform superposition against the
    // fixed relative factor, normalized to unit trace.
    const Eigen::MatrixXcd cm = Eigen::MatrixXcd::Constant(d, d, Complex(1.0 / d, 0.0));
    Eigen::MatrixXcd prep = kron(cm, rho_r);
    prep /= prep.trace().real();

    const FiniteGroupAction trans = translation_phase_action(d, s.d_r);
    const FiniteGroupAction boost = boost_shift_action(d, s.d_r);
    Eigen::MatrixXcd trans_sum = Eigen::MatrixXcd::Zero(prep.rows(), prep.cols());
    for (const auto& u : trans.unitaries) {
      trans_sum += u * prep * u.adjoint();
    }
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(prep.rows(), prep.cols());
    for (const auto& u : boost.unitaries) {
      total += u * trans_sum * u.adjoint();
    }
    points.push_back(DivergencePoint{d, total.trace().real()});
  }
  return points;
}

std::string divergence_csv(const std::vector<DivergencePoint>& points) {
  std::string out = "d_cm,trace\n";
  for (const auto& p : points) {
    out += std::to_string(p.d_cm);
    out += ',';
    out += format_g17(p.trace);
    out += '\n';
  }
  return out;
}

}  // namespace rqf
