#pragma once

#include <string>
#include <utility>
#include <vector>

// Parameter sweeps behind the entanglement heatmaps. Grid points are
// independent; the default engines fan them out over OpenMP threads and store
// rows by grid index, so output order never depends on scheduling. The serial
// engines run the same per-point kernel and produce bitwise-identical rows;
// they are kept as the reference implementation for tests and benchmarks.

namespace rqf {

struct SweepConfig {
  int n_particles = 2;
  std::vector<double> mass_ratio;   // m1 / M
  std::vector<double> mass2_ratio;  // m2 / M (3 particles); empty = m2 = m3
  std::vector<double> r;
  std::vector<double> theta;
  std::vector<std::pair<double, double>> purity;  // (mu1, mu2); 2 particles
  std::vector<double> alpha;                      // r2 = alpha * r1; 2 particles
};

/// Throws std::invalid_argument on empty grids or out-of-range values.
void validate(const SweepConfig& cfg);

// Two particles, one row per (mass_ratio, r1, alpha, theta, purity) grid
// point in that lexicographic nesting order. theta1 = theta2 = theta and
// r2 = alpha * r1 throughout.
struct Sweep2Row {
  double mass_ratio, r1, r2, theta1, theta2, mu1, mu2, logneg_cmr, purity_rel;
};

// Three particles, identical pure single-mode inputs, one row per
// (m1_ratio, m2_ratio, r, theta) grid point. logneg_cmr is taken across the
// CM vs relative cut of the 3-mode matrix, logneg_rel between the two modes
// of the reduced relative matrix.
struct Sweep3Row {
  double m1_ratio, m2_ratio, r, theta, logneg_cmr, logneg_rel;
};

Sweep2Row sweep2_point(double mass_ratio, double r1, double alpha, double theta, double mu1,
                       double mu2);
Sweep3Row sweep3_point(double m1_ratio, double m2_ratio, double r, double theta);

std::vector<Sweep2Row> run_sweep2(const SweepConfig& cfg);
std::vector<Sweep3Row> run_sweep3(const SweepConfig& cfg);
std::vector<Sweep2Row> run_sweep2_serial(const SweepConfig& cfg);
std::vector<Sweep3Row> run_sweep3_serial(const SweepConfig& cfg);

extern const char* const kSweep2Header;
extern const char* const kSweep3Header;

/// 17-significant-digit CSV with '\n' line endings; byte-stable across runs.
std::string to_csv(const std::vector<Sweep2Row>& rows);
std::string to_csv(const std::vector<Sweep3Row>& rows);

}  // namespace rqf
