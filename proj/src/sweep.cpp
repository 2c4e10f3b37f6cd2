#include "rqf/sweep.hpp"

#include "rqf/entanglement.hpp"
#include "rqf/format.hpp"
#include "rqf/partition.hpp"

#include <atomic>
#include <cstdint>
#include <stdexcept>

#if defined(__GNUC__)
#define RQF_NOINLINE __attribute__((noinline))
#else
#define RQF_NOINLINE
#endif

namespace rqf {
namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_fraction_grid(const std::vector<double>& grid, const char* name) {
  require(!grid.empty(), "sweep config: empty mass-ratio grid");
  for (double w : grid) {
    if (!(w > 0.0) || !(w < 1.0)) {
      throw std::invalid_argument(std::string("sweep config: ") + name +
                                  " values must lie in (0, 1)");
    }
  }
}

// Evaluates every grid point through `point` into a dense row vector; the
// parallel path distributes indices and still writes rows by index, so both
// paths yield identical bytes.
template <typename Row, typename PointFn>
std::vector<Row> run_grid(std::int64_t total, bool parallel, const PointFn& point) {
  std::vector<Row> rows(static_cast<std::size_t>(total));
  std::atomic<bool> failed{false};
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      try {
        rows[static_cast<std::size_t>(idx)] = point(idx);
      } catch (...) {
        failed.store(true, std::memory_order_relaxed);
      }
    }
  } else {
    for (std::int64_t idx = 0; idx < total; ++idx) {
      try {
        rows[static_cast<std::size_t>(idx)] = point(idx);
      } catch (...) {
        failed.store(true, std::memory_order_relaxed);
      }
    }
  }
  if (failed.load()) {
    throw numeric_error("sweep: grid point evaluation failed");
  }
  return rows;
}

std::vector<Sweep2Row> eval_sweep2(const SweepConfig& cfg, bool parallel) {
  validate(cfg);
  require(cfg.n_particles == 2, "run_sweep2: config must have n_particles = 2");
  const auto& w = cfg.mass_ratio;
  const auto& r = cfg.r;
  const auto& a = cfg.alpha;
  const auto& t = cfg.theta;
  const auto& mu = cfg.purity;
  const std::int64_t total = static_cast<std::int64_t>(w.size()) * r.size() * a.size() *
                             t.size() * mu.size();
  const auto point = [&](std::int64_t idx) {
    std::int64_t rest = idx;
    const std::size_t i_mu = static_cast<std::size_t>(rest % mu.size());
    rest /= static_cast<std::int64_t>(mu.size());
    const std::size_t i_t = static_cast<std::size_t>(rest % t.size());
    rest /= static_cast<std::int64_t>(t.size());
    const std::size_t i_a = static_cast<std::size_t>(rest % a.size());
    rest /= static_cast<std::int64_t>(a.size());
    const std::size_t i_r = static_cast<std::size_t>(rest % r.size());
    rest /= static_cast<std::int64_t>(r.size());
    const std::size_t i_w = static_cast<std::size_t>(rest);
    return sweep2_point(w[i_w], r[i_r], a[i_a], t[i_t], mu[i_mu].first, mu[i_mu].second);
  };
  return run_grid<Sweep2Row>(total, parallel, point);
}

std::vector<Sweep3Row> eval_sweep3(const SweepConfig& cfg, bool parallel) {
  validate(cfg);
  require(cfg.n_particles == 3, "run_sweep3: config must have n_particles = 3");
  const auto& w1 = cfg.mass_ratio;
  const auto& r = cfg.r;
  const auto& t = cfg.theta;
  const bool linked = cfg.mass2_ratio.empty();  // m2 = m3 = (1 - m1) / 2
  const std::size_t n2 = linked ? 1 : cfg.mass2_ratio.size();
  const std::int64_t total =
      static_cast<std::int64_t>(w1.size()) * static_cast<std::int64_t>(n2) * r.size() * t.size();
  const auto point = [&](std::int64_t idx) {
    std::int64_t rest = idx;
    const std::size_t i_t = static_cast<std::size_t>(rest % t.size());
    rest /= static_cast<std::int64_t>(t.size());
    const std::size_t i_r = static_cast<std::size_t>(rest % r.size());
    rest /= static_cast<std::int64_t>(r.size());
    const std::size_t i_2 = static_cast<std::size_t>(rest % n2);
    rest /= static_cast<std::int64_t>(n2);
    const std::size_t i_1 = static_cast<std::size_t>(rest);
    const double m1 = w1[i_1];
    const double m2 = linked ? 0.5 * (1.0 - m1) : cfg.mass2_ratio[i_2];
    return sweep3_point(m1, m2, r[i_r], t[i_t]);
  };
  return run_grid<Sweep3Row>(total, parallel, point);
}

}  // namespace

void validate(const SweepConfig& cfg) {
  require(cfg.n_particles == 2 || cfg.n_particles == 3,
          "sweep config: n_particles must be 2 or 3");
  check_fraction_grid(cfg.mass_ratio, "m1/M");
  require(!cfg.r.empty(), "sweep config: empty r grid");
  require(!cfg.theta.empty(), "sweep config: empty theta grid");
  if (cfg.n_particles == 2) {
    require(!cfg.purity.empty(), "sweep config: empty purity list");
    for (const auto& [mu1, mu2] : cfg.purity) {
      require(mu1 > 0.0 && mu1 <= 1.0 && mu2 > 0.0 && mu2 <= 1.0,
              "sweep config: purity values must lie in (0, 1]");
    }
    require(!cfg.alpha.empty(), "sweep config: empty alpha list");
  } else {
    if (!cfg.mass2_ratio.empty()) {
      check_fraction_grid(cfg.mass2_ratio, "m2/M");
      for (double m1 : cfg.mass_ratio) {
        for (double m2 : cfg.mass2_ratio) {
          require(m1 + m2 < 1.0, "sweep config: mass fractions must sum below 1");
        }
      }
    }
  }
}

RQF_NOINLINE Sweep2Row sweep2_point(double mass_ratio, double r1, double alpha, double theta,
                                    double mu1, double mu2) {
  const double r2 = alpha * r1;
  const ParticleSystem sys({mass_ratio, 1.0 - mass_ratio});
  const SingleModeParams p1{mu1, r1, theta};
  const SingleModeParams p2{mu2, r2, theta};
  const CovarianceMatrix v_ext = direct_sum(single_mode_cov(p1), single_mode_cov(p2));
  const CovarianceMatrix v_cmr = transform_cov(v_ext, cmr_matrix(sys));

  Sweep2Row row;
  row.mass_ratio = mass_ratio;
  row.r1 = r1;
  row.r2 = r2;
  row.theta1 = theta;
  row.theta2 = theta;
  row.mu1 = mu1;
  row.mu2 = mu2;
  row.logneg_cmr = log_negativity(v_cmr, Bipartition{{1}, {2}});
  row.purity_rel = purity(delete_modes(v_cmr, {1}));
  return row;
}

RQF_NOINLINE Sweep3Row sweep3_point(double m1_ratio, double m2_ratio, double r, double theta) {
  const double m3_ratio = 1.0 - m1_ratio - m2_ratio;
  const ParticleSystem sys({m1_ratio, m2_ratio, m3_ratio});
  const SingleModeParams p{1.0, r, theta};
  const CovarianceMatrix v1 = single_mode_cov(p);
  const CovarianceMatrix v_ext = direct_sum(direct_sum(v1, v1), v1);
  const CovarianceMatrix v_cmr = transform_cov(v_ext, cmr_matrix(sys));
  const CovarianceMatrix v_rel = delete_modes(v_cmr, {1});

  Sweep3Row row;
  row.m1_ratio = m1_ratio;
  row.m2_ratio = m2_ratio;
  row.r = r;
  row.theta = theta;
  // 1 x 2 cut: transpose the single CM mode.
  row.logneg_cmr = log_negativity(v_cmr, Bipartition{{2, 3}, {1}});
  row.logneg_rel = log_negativity(v_rel, Bipartition{{1}, {2}});
  return row;
}

std::vector<Sweep2Row> run_sweep2(const SweepConfig& cfg) { return eval_sweep2(cfg, true); }
std::vector<Sweep3Row> run_sweep3(const SweepConfig& cfg) { return eval_sweep3(cfg, true); }
std::vector<Sweep2Row> run_sweep2_serial(const SweepConfig& cfg) {
  return eval_sweep2(cfg, false);
}
std::vector<Sweep3Row> run_sweep3_serial(const SweepConfig& cfg) {
  return eval_sweep3(cfg, false);
}

const char* const kSweep2Header = "mass_ratio,r1,r2,theta1,theta2,mu1,mu2,logneg_cmr,purity_rel";
const char* const kSweep3Header = "m1_ratio,m2_ratio,r,theta,logneg_cmr,logneg_rel";

std::string to_csv(const std::vector<Sweep2Row>& rows) {
  std::string out = kSweep2Header;
  out += '\n';
  for (const auto& r : rows) {
    out += format_g17(r.mass_ratio) + ',' + format_g17(r.r1) + ',' + format_g17(r.r2) + ',' +
           format_g17(r.theta1) + ',' + format_g17(r.theta2) + ',' + format_g17(r.mu1) + ',' +
           format_g17(r.mu2) + ',' + format_g17(r.logneg_cmr) + ',' + format_g17(r.purity_rel);
    out += '\n';
  }
  return out;
}

std::string to_csv(const std::vector<Sweep3Row>& rows) {
  std::string out = kSweep3Header;
  out += '\n';
  for (const auto& r : rows) {
    out += format_g17(r.m1_ratio) + ',' + format_g17(r.m2_ratio) + ',' + format_g17(r.r) + ',' +
           format_g17(r.theta) + ',' + format_g17(r.logneg_cmr) + ',' + format_g17(r.logneg_rel);
    out += '\n';
  }
  return out;
}

}  // namespace rqf
