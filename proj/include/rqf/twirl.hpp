#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

// Finite-dimensional model of frame averaging: a density matrix on a
// (center of mass) x (relative) tensor pair carried on discrete momentum
// grids, with the cyclic group Z_{d_cm} acting on the CM factor by momentum
// phases (translations) and momentum shifts (boosts).

namespace rqf {

// Momentum-basis density matrix; composite row-major index p_cm * d_r + p_r.
struct FiniteBipartiteState {
  int d_cm = 0;
  int d_r = 0;
  Eigen::MatrixXcd rho;
};

// Validates dims > 0, shape, Hermiticity (1e-12), unit trace (1e-12), and
// min eigenvalue >= -1e-10; throws std::invalid_argument otherwise.
FiniteBipartiteState make_bipartite_state(int d_cm, int d_r, Eigen::MatrixXcd rho);

/// rho = G G^dagger / tr, Ginibre G with seeded deterministic entries.
FiniteBipartiteState random_bipartite_state(int d_cm, int d_r, std::uint64_t seed);

/// One unitary per group element.
struct FiniteGroupAction {
  std::vector<Eigen::MatrixXcd> unitaries;
};

/// Validating constructor for user-supplied actions (unitarity to 1e-12).
FiniteGroupAction make_group_action(std::vector<Eigen::MatrixXcd> unitaries);

// Built-in cyclic actions on the CM factor of a d_cm x d_r pair; the
// relative factor always carries the identity.
//   translation: U(g) = sum_p exp(-2 pi i g p / d_cm) |p><p| (x) I
//   boost:       U(h) = sum_p |p + h mod d_cm><p| (x) I
FiniteGroupAction translation_phase_action(int d_cm, int d_r);
FiniteGroupAction boost_shift_action(int d_cm, int d_r);

/// Uniform group average (1/|G|) sum_g U(g) rho U(g)^dagger.
Eigen::MatrixXcd compact_twirl(const Eigen::MatrixXcd& rho, const FiniteGroupAction& action);

// Dephases the CM momentum index (every element with p_cm != p_cm' goes to
// zero), realized as the compact twirl of the cyclic phase action.
FiniteBipartiteState translation_twirl(const FiniteBipartiteState& s);

/// Compact twirl of the cyclic shift action on the CM index.
FiniteBipartiteState boost_twirl(const FiniteBipartiteState& s);

/// Partial trace over the CM factor; d_r x d_r.
Eigen::MatrixXcd relational_state(const FiniteBipartiteState& s);

struct DivergencePoint {
  int d_cm = 0;
  double trace = 0.0;
};

// For each dimension d: re-prepare the CM factor (uniform superposition)
// against the fixed relative factor tr_cm(rho), then accumulate
// sum_{g,h} U_B(h) U_T(g) rho U_T(g)^dag U_B(h)^dag with NO 1/|G|^2
// normalization and record its trace, which scales as d^2.
std::vector<DivergencePoint> divergence_scan(const FiniteBipartiteState& s,
                                             const std::vector<int>& dims);

/// Columns: d_cm,trace
std::string divergence_csv(const std::vector<DivergencePoint>& points);

}  // namespace rqf
