#include "priorcheck/lasso.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "priorcheck/special_functions.hpp"

namespace priorcheck {
namespace lasso {

ScoreConstants ScoreConstants::compute() {
  ScoreConstants c;
  // psi(3) - psi(1) = 1 + 1/2 by the recurrence, so A1 is exactly -5/4.
  c.A1 = -1.25;
  c.B1 = -std::sqrt(2.0) * (std::log(2.0) + digamma(1.0) - 3.0 * digamma(3.0)) / 2.0;
  c.C1 = -std::sqrt(2.0);
  return c;
}

double kurtosis_stat(const Eigen::Ref<const Eigen::VectorXd>& xbar) {
  const double s2 = xbar.array().square().sum();
  if (!(s2 > 0.0)) throw std::domain_error("kurtosis_stat: all-zero vector");
  const double s4 = xbar.array().square().square().sum();
  return s4 / (s2 * s2);
}

double approx_score_stat(const Eigen::Ref<const Eigen::VectorXd>& estimates, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("approx_score_stat: tau must be > 0");
  static const ScoreConstants k = ScoreConstants::compute();
  const Eigen::Index n = estimates.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = std::fabs(estimates[i]) / tau;
    if (u > 0.0) acc += k.B1 * u + k.C1 * u * std::log(u);
  }
  return k.A1 + acc / static_cast<double>(n);
}

namespace {

// Linear-interpolation empirical quantile on a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = p * (static_cast<double>(sorted.size()) - 1.0);
  const auto i = static_cast<std::size_t>(h);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(i);
  return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

Eigen::VectorXd draw_means_data(const ManyMeansSetup& setup, double q, RngStream& rng) {
  Eigen::VectorXd mu = sample_exp_power(rng, setup.tau, q, setup.n);
  const double sd = 1.0 / std::sqrt(static_cast<double>(setup.m));
  for (Eigen::Index i = 0; i < mu.size(); ++i) mu[i] += sd * rng.normal();
  return mu;
}

double reported_stat(LassoStat which, const ManyMeansSetup& setup,
                     const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (which == LassoStat::kurtosis)
    return static_cast<double>(setup.n) * kurtosis_stat(x);
  return approx_score_stat(x, setup.tau) + kScoreReportOffset;
}

// Reference sample of both statistics under the q0 predictive, each
// sorted ascending.
void reference_both(const ManyMeansSetup& setup, const McConfig& cfg,
                    std::uint64_t stream_base, std::vector<double>& ref_k,
                    std::vector<double>& ref_s) {
  ref_k.assign(static_cast<std::size_t>(cfg.n_draws), 0.0);
  ref_s.assign(static_cast<std::size_t>(cfg.n_draws), 0.0);
  parallel_for_chunks(cfg.n_draws, cfg.n_workers, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      RngStream rng(cfg.base_seed, stream_base + static_cast<std::uint64_t>(i));
      const Eigen::VectorXd x = draw_means_data(setup, setup.q0, rng);
      ref_k[static_cast<std::size_t>(i)] = kurtosis_stat(x);
      ref_s[static_cast<std::size_t>(i)] = approx_score_stat(x, setup.tau);
    }
  });
  std::sort(ref_k.begin(), ref_k.end());
  std::sort(ref_s.begin(), ref_s.end());
}

double two_sided_p(const std::vector<double>& sorted_ref, double s) {
  return two_sided_from_tails(p_upper_sorted(sorted_ref, s), p_lower_sorted(sorted_ref, s));
}

}  // namespace

std::pair<double, double> critical_values(LassoStat statistic, const ManyMeansSetup& setup,
                                          const McConfig& cfg) {
  setup.validate();
  cfg.validate();
  if (cfg.n_draws < 10000)
    throw std::domain_error("critical_values: n_draws must be >= 10000");
  std::vector<double> stats(static_cast<std::size_t>(cfg.n_draws));
  const std::uint64_t base = cfg.stream_domain << 32;
  parallel_for_chunks(cfg.n_draws, cfg.n_workers, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      RngStream rng(cfg.base_seed, base + static_cast<std::uint64_t>(i));
      const Eigen::VectorXd x = draw_means_data(setup, setup.q0, rng);
      stats[static_cast<std::size_t>(i)] = reported_stat(statistic, setup, x);
    }
  });
  std::sort(stats.begin(), stats.end());
  return {quantile_sorted(stats, 0.025), quantile_sorted(stats, 0.975)};
}

PowerCurve many_means_power(LassoStat statistic, const ManyMeansSetup& setup,
                            const std::vector<double>& q_grid, long n_reps,
                            const McConfig& cfg) {
  const PowerPair both = many_means_power_both(setup, q_grid, n_reps, cfg);
  PowerCurve out;
  out.gamma_grid = both.q_grid;
  out.power = (statistic == LassoStat::kurtosis) ? both.power_kurtosis : both.power_score;
  out.n_reps = both.n_reps;
  out.alpha = both.alpha;
  out.base_seed = both.base_seed;
  return out;
}

PowerPair many_means_power_both(const ManyMeansSetup& setup, const std::vector<double>& q_grid,
                                long n_reps, const McConfig& cfg) {
  setup.validate();
  cfg.validate();
  for (double q : q_grid)
    if (!(q > 0.0)) throw std::domain_error("many_means_power: q_grid entries must be > 0");
  if (n_reps < 1) throw std::domain_error("many_means_power: n_reps must be >= 1");

  const std::uint64_t base = cfg.stream_domain << 32;
  std::vector<double> ref_k, ref_s;
  reference_both(setup, cfg, base, ref_k, ref_s);

  const long g = static_cast<long>(q_grid.size());
  std::vector<int> rej_k(static_cast<std::size_t>(g * n_reps), 0);
  std::vector<int> rej_s(static_cast<std::size_t>(g * n_reps), 0);
  const std::uint64_t rep_base = base + static_cast<std::uint64_t>(cfg.n_draws);
  parallel_for_chunks(g * n_reps, cfg.n_workers, [&](long lo, long hi) {
    for (long k = lo; k < hi; ++k) {
      const long i = k / n_reps;
      RngStream rng(cfg.base_seed, rep_base + static_cast<std::uint64_t>(k));
      const Eigen::VectorXd x = draw_means_data(setup, q_grid[static_cast<std::size_t>(i)], rng);
      rej_k[static_cast<std::size_t>(k)] =
          (two_sided_p(ref_k, kurtosis_stat(x)) <= cfg.alpha) ? 1 : 0;
      rej_s[static_cast<std::size_t>(k)] =
          (two_sided_p(ref_s, approx_score_stat(x, setup.tau)) <= cfg.alpha) ? 1 : 0;
    }
  });

  PowerPair out;
  out.q_grid = q_grid;
  out.power_kurtosis.resize(static_cast<std::size_t>(g));
  out.power_score.resize(static_cast<std::size_t>(g));
  for (long i = 0; i < g; ++i) {
    long hk = 0, hs = 0;
    for (long j = 0; j < n_reps; ++j) {
      hk += rej_k[static_cast<std::size_t>(i * n_reps + j)];
      hs += rej_s[static_cast<std::size_t>(i * n_reps + j)];
    }
    out.power_kurtosis[static_cast<std::size_t>(i)] =
        static_cast<double>(hk) / static_cast<double>(n_reps);
    out.power_score[static_cast<std::size_t>(i)] =
        static_cast<double>(hs) / static_cast<double>(n_reps);
  }
  out.n_reps = n_reps;
  out.alpha = cfg.alpha;
  out.base_seed = cfg.base_seed;
  return out;
}

Eigen::VectorXd regression_estimates(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                     const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (X.rows() != y.size())
    throw std::domain_error("regression_estimates: X rows must match y size");
  if (X.size() == 0 || X.isZero(0.0))
    throw std::domain_error("regression_estimates: X must be nonzero");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  return svd.solve(y);
}

namespace {

// One simulated regression data set: fresh design, prior coefficients at
// shape q, least-squares estimates, both statistics.
void standardize_columns(Eigen::MatrixXd& X) {
  for (Eigen::Index c = 0; c < X.cols(); ++c) {
    X.col(c).array() -= X.col(c).mean();
    const double norm = X.col(c).norm();
    if (norm > 0.0) X.col(c) /= norm;
  }
}

void regression_draw_stats(const RegressionSetup& setup, double q, RngStream& rng,
                           double& k_stat, double& s_stat) {
  Eigen::MatrixXd X(setup.n, setup.p);
  for (Eigen::Index c = 0; c < X.cols(); ++c)
    for (Eigen::Index r = 0; r < X.rows(); ++r) X(r, c) = rng.normal();
  const Eigen::VectorXd beta = sample_exp_power(rng, setup.tau, q, setup.p);
  Eigen::VectorXd y = X * beta;
  for (Eigen::Index r = 0; r < y.size(); ++r) y[r] += rng.normal();
  if (setup.standardize) standardize_columns(X);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const Eigen::VectorXd bhat = svd.solve(y);
  k_stat = kurtosis_stat(bhat);
  s_stat = approx_score_stat(bhat, setup.tau);
}

}  // namespace

PowerPair regression_power_study(const RegressionSetup& setup, const std::vector<double>& q_grid,
                                 long n_reps, const McConfig& cfg) {
  setup.validate();
  cfg.validate();
  for (double q : q_grid)
    if (!(q > 0.0)) throw std::domain_error("regression_power_study: q_grid entries must be > 0");
  if (n_reps < 1) throw std::domain_error("regression_power_study: n_reps must be >= 1");

  const long g = static_cast<long>(q_grid.size());
  std::vector<int> rej_k(static_cast<std::size_t>(g * n_reps), 0);
  std::vector<int> rej_s(static_cast<std::size_t>(g * n_reps), 0);
  const std::uint64_t base = cfg.stream_domain << 32;

  if (setup.conditional_reference) {
    // Streams per replicate: one for (X, beta, z), then n_draws for the
    // per-design reference.
    const std::uint64_t strides = 1 + static_cast<std::uint64_t>(cfg.n_draws);
    parallel_for_chunks(g * n_reps, cfg.n_workers, [&](long lo, long hi) {
      for (long k = lo; k < hi; ++k) {
        const long i = k / n_reps;
        const double q = q_grid[static_cast<std::size_t>(i)];
        const std::uint64_t rep_stream = base + static_cast<std::uint64_t>(k) * strides;
        RngStream rng(cfg.base_seed, rep_stream);

        Eigen::MatrixXd X(setup.n, setup.p);
        for (Eigen::Index c = 0; c < X.cols(); ++c)
          for (Eigen::Index r = 0; r < X.rows(); ++r) X(r, c) = rng.normal();
        const Eigen::VectorXd beta = sample_exp_power(rng, setup.tau, q, setup.p);
        Eigen::VectorXd y = X * beta;
        for (Eigen::Index r = 0; r < y.size(); ++r) y[r] += rng.normal();
        if (setup.standardize) standardize_columns(X);

        Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-10);
        const Eigen::VectorXd bhat = svd.solve(y);
        const double k_obs = kurtosis_stat(bhat);
        const double s_obs = approx_score_stat(bhat, setup.tau);

        std::vector<double> ref_k(static_cast<std::size_t>(cfg.n_draws));
        std::vector<double> ref_s(static_cast<std::size_t>(cfg.n_draws));
        for (long d = 0; d < cfg.n_draws; ++d) {
          RngStream rr(cfg.base_seed, rep_stream + 1 + static_cast<std::uint64_t>(d));
          const Eigen::VectorXd b0 = sample_exp_power(rr, setup.tau, setup.q0, setup.p);
          Eigen::VectorXd y0 = X * b0;
          for (Eigen::Index r = 0; r < y0.size(); ++r) y0[r] += rr.normal();
          const Eigen::VectorXd b0hat = svd.solve(y0);
          ref_k[static_cast<std::size_t>(d)] = kurtosis_stat(b0hat);
          ref_s[static_cast<std::size_t>(d)] = approx_score_stat(b0hat, setup.tau);
        }
        std::sort(ref_k.begin(), ref_k.end());
        std::sort(ref_s.begin(), ref_s.end());
        rej_k[static_cast<std::size_t>(k)] = (two_sided_p(ref_k, k_obs) <= cfg.alpha) ? 1 : 0;
        rej_s[static_cast<std::size_t>(k)] = (two_sided_p(ref_s, s_obs) <= cfg.alpha) ? 1 : 0;
      }
    });
  } else {
    // Unconditional q0 reference with a fresh design per draw, shared by
    // every grid point and replicate.
    std::vector<double> ref_k(static_cast<std::size_t>(cfg.n_draws));
    std::vector<double> ref_s(static_cast<std::size_t>(cfg.n_draws));
    parallel_for_chunks(cfg.n_draws, cfg.n_workers, [&](long lo, long hi) {
      for (long d = lo; d < hi; ++d) {
        RngStream rng(cfg.base_seed, base + static_cast<std::uint64_t>(d));
        regression_draw_stats(setup, setup.q0, rng, ref_k[static_cast<std::size_t>(d)],
                              ref_s[static_cast<std::size_t>(d)]);
      }
    });
    std::sort(ref_k.begin(), ref_k.end());
    std::sort(ref_s.begin(), ref_s.end());

    const std::uint64_t rep_base = base + static_cast<std::uint64_t>(cfg.n_draws);
    parallel_for_chunks(g * n_reps, cfg.n_workers, [&](long lo, long hi) {
      for (long k = lo; k < hi; ++k) {
        const long i = k / n_reps;
        RngStream rng(cfg.base_seed, rep_base + static_cast<std::uint64_t>(k));
        double k_obs, s_obs;
        regression_draw_stats(setup, q_grid[static_cast<std::size_t>(i)], rng, k_obs, s_obs);
        rej_k[static_cast<std::size_t>(k)] = (two_sided_p(ref_k, k_obs) <= cfg.alpha) ? 1 : 0;
        rej_s[static_cast<std::size_t>(k)] = (two_sided_p(ref_s, s_obs) <= cfg.alpha) ? 1 : 0;
      }
    });
  }

  PowerPair out;
  out.q_grid = q_grid;
  out.power_kurtosis.resize(static_cast<std::size_t>(g));
  out.power_score.resize(static_cast<std::size_t>(g));
  for (long i = 0; i < g; ++i) {
    long hk = 0, hs = 0;
    for (long j = 0; j < n_reps; ++j) {
      hk += rej_k[static_cast<std::size_t>(i * n_reps + j)];
      hs += rej_s[static_cast<std::size_t>(i * n_reps + j)];
    }
    out.power_kurtosis[static_cast<std::size_t>(i)] =
        static_cast<double>(hk) / static_cast<double>(n_reps);
    out.power_score[static_cast<std::size_t>(i)] =
        static_cast<double>(hs) / static_cast<double>(n_reps);
  }
  out.n_reps = n_reps;
  out.alpha = cfg.alpha;
  out.base_seed = cfg.base_seed;
  return out;
}

}  // namespace lasso
}  // namespace priorcheck
