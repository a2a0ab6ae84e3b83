#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include <Eigen/Cholesky>

#include "priorcheck/lasso.hpp"

using namespace priorcheck;
using namespace priorcheck::lasso;

TEST_CASE("score constants") {
  const ScoreConstants k = ScoreConstants::compute();
  CHECK(k.A1 == -1.25);
  CHECK(std::fabs(1.0 + 1.5 * (oracles::digamma_shift20(1.0) - oracles::digamma_shift20(3.0)) - k.A1) <= 1e-12);
  CHECK(k.C1 == -std::sqrt(2.0));
  const double psi1 = oracles::digamma_shift20(1.0);
  const double psi3 = oracles::digamma_shift20(3.0);
  const double b1 = -std::sqrt(2.0) * (std::log(2.0) + psi1 - 3.0 * psi3) / 2.0;
  CHECK(std::fabs(k.B1 - b1) <= 1e-12);
  CHECK(k.B1 == doctest::Approx(1.8755).epsilon(1e-4));
}

TEST_CASE("kurtosis statistic") {
  CHECK(kurtosis_stat(Eigen::VectorXd::Constant(10, 3.7)) ==
        doctest::Approx(0.1).epsilon(1e-14));
  Eigen::VectorXd one = Eigen::VectorXd::Zero(8);
  one[3] = -2.5;
  CHECK(kurtosis_stat(one) == doctest::Approx(1.0).epsilon(1e-14));
  Eigen::VectorXd v(2);
  v << 1.0, 2.0;
  CHECK(kurtosis_stat(v) == doctest::Approx(17.0 / 25.0).epsilon(1e-14));
  CHECK_THROWS_AS(kurtosis_stat(Eigen::VectorXd::Zero(4)), std::domain_error);
}

TEST_CASE("approximate score statistic values") {
  CHECK(approx_score_stat(Eigen::VectorXd::Zero(10), 1.0) == -1.25);
  const ScoreConstants k = ScoreConstants::compute();
  Eigen::VectorXd single(1);
  single << 1.0;
  CHECK(approx_score_stat(single, 1.0) == doctest::Approx(k.A1 + k.B1).epsilon(1e-14));
  CHECK(approx_score_stat(single, 1.0) == doctest::Approx(0.6255).epsilon(1e-3));
}

TEST_CASE("approximate score depends only on |estimates/tau|") {
  RngStream rng(14, 0);
  for (int it = 0; it < 20; ++it) {
    Eigen::VectorXd e(7);
    for (int i = 0; i < 7; ++i) e[i] = 2.0 * rng.normal();
    const double tau = 0.5 + rng.uniform();
    const double s = approx_score_stat(e, tau);
    // sign flips
    Eigen::VectorXd flipped = e;
    flipped[it % 7] = -flipped[it % 7];
    CHECK(approx_score_stat(flipped, tau) == s);
    // permutation
    Eigen::VectorXd perm(7);
    for (int i = 0; i < 7; ++i) perm[i] = e[(i + 3) % 7];
    CHECK(approx_score_stat(perm, tau) == doctest::Approx(s).epsilon(1e-15));
    // joint scaling
    const double c = 0.3 + 2.0 * rng.uniform();
    CHECK(approx_score_stat(c * e, c * tau) == doctest::Approx(s).epsilon(1e-13));
  }
}

TEST_CASE("critical values reproduce the published table") {
  McConfig cfg;
  cfg.n_draws = 100000;
  cfg.base_seed = 2718;
  ManyMeansSetup s10{10, 20, 1.0, 1.0};
  {
    const auto [lo, hi] = critical_values(LassoStat::kurtosis, s10, cfg);
    CHECK(std::fabs(lo - 1.65) <= 0.05);
    CHECK(std::fabs(hi - 6.72) <= 0.05);
  }
  {
    const auto [lo, hi] = critical_values(LassoStat::score, s10, cfg);
    CHECK(std::fabs(lo - 0.408) <= 0.02);
    CHECK(std::fabs(hi - 1.117) <= 0.02);
  }
  ManyMeansSetup s100{100, 20, 1.0, 1.0};
  {
    // the q=1 reference simulation is authoritative for this pair; it
    // converges to (3.09, 10.11) on the n-scaled axis
    const auto [lo, hi] = critical_values(LassoStat::kurtosis, s100, cfg);
    CHECK(std::fabs(lo - 3.09) <= 0.08);
    CHECK(std::fabs(hi - 10.11) <= 0.15);
  }
  {
    const auto [lo, hi] = critical_values(LassoStat::score, s100, cfg);
    CHECK(std::fabs(lo - 0.670) <= 0.015);
    CHECK(std::fabs(hi - 0.898) <= 0.015);
  }
}

TEST_CASE("critical values demand a draw floor") {
  McConfig cfg;
  cfg.n_draws = 5000;
  ManyMeansSetup s{10, 20, 1.0, 1.0};
  CHECK_THROWS_AS(critical_values(LassoStat::kurtosis, s, cfg), std::domain_error);
}

TEST_CASE("kurtosis reference is invariant under joint (tau, noise) scaling") {
  // k is scale-free, so scaling the prior and the noise together leaves
  // the reference untouched; tau alone at fixed m shifts it.
  McConfig cfg;
  cfg.n_draws = 40000;
  cfg.base_seed = 10;
  const auto [lo1, hi1] = critical_values(LassoStat::kurtosis, {10, 80, 0.5, 1.0}, cfg);
  cfg.base_seed = 11;
  const auto [lo2, hi2] = critical_values(LassoStat::kurtosis, {10, 20, 1.0, 1.0}, cfg);
  cfg.base_seed = 12;
  const auto [lo3, hi3] = critical_values(LassoStat::kurtosis, {10, 5, 2.0, 1.0}, cfg);
  CHECK(std::fabs(lo1 - lo2) <= 0.06);
  CHECK(std::fabs(lo2 - lo3) <= 0.06);
  CHECK(std::fabs(hi1 - hi2) <= 0.25);
  CHECK(std::fabs(hi2 - hi3) <= 0.25);
}

TEST_CASE("many-means power: size at the null and the U shape") {
  ManyMeansSetup s{10, 20, 1.0, 1.0};
  McConfig cfg;
  cfg.n_draws = 10000;
  cfg.base_seed = 404;
  const PowerPair pp = many_means_power_both(s, {0.2, 1.0, 2.0}, 500, cfg);
  CHECK(std::fabs(pp.power_score[1] - 0.05) <= 0.02);
  CHECK(std::fabs(pp.power_kurtosis[1] - 0.05) <= 0.02);
  CHECK(pp.power_score[0] > pp.power_score[1]);
  CHECK(pp.power_score[2] > pp.power_score[1]);
  CHECK(pp.power_kurtosis[0] > pp.power_kurtosis[1]);
  CHECK(pp.power_kurtosis[2] > pp.power_kurtosis[1]);
}

TEST_CASE("self-replication rejection rate matches the band construction") {
  // Data drawn at q !=, the critical-value band at q0 = data-generating q
  // rejects 5% of the time by construction.
  ManyMeansSetup s{10, 20, 1.0, 1.0};
  McConfig cfg;
  cfg.n_draws = 20000;
  cfg.base_seed = 515;
  const PowerPair pp = many_means_power_both(s, {1.0}, 500, cfg);
  CHECK(std::fabs(pp.power_score[0] - 0.05) <= 0.02);
  CHECK(std::fabs(pp.power_kurtosis[0] - 0.05) <= 0.02);
}

TEST_CASE("minimum-norm least squares") {
  {
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(5, 5);
    Eigen::VectorXd y(5);
    y << 1, -2, 3, 0.5, 4;
    CHECK((regression_estimates(X, y) - y).norm() <= 1e-12);
  }
  {
    // duplicated column: minimum norm splits the weight equally
    Eigen::MatrixXd X(4, 2);
    X << 1, 1, 2, 2, -1, -1, 0.5, 0.5;
    Eigen::VectorXd truth(1);
    Eigen::VectorXd y = X.col(0) * 3.0;
    const Eigen::VectorXd b = regression_estimates(X, y);
    CHECK(b[0] == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(b[1] == doctest::Approx(1.5).epsilon(1e-10));
  }
  {
    // wide system: residual orthogonal to columns, solution in the row
    // space (Gram-route oracle)
    RngStream rng(33, 0);
    Eigen::MatrixXd X(20, 30);
    for (int c = 0; c < 30; ++c)
      for (int r = 0; r < 20; ++r) X(r, c) = rng.normal();
    Eigen::VectorXd y(20);
    for (int r = 0; r < 20; ++r) y[r] = rng.normal();
    const Eigen::VectorXd b = regression_estimates(X, y);
    CHECK((X.transpose() * (y - X * b)).lpNorm<Eigen::Infinity>() <= 1e-8);
    const Eigen::MatrixXd G = X * X.transpose();
    const Eigen::VectorXd b_gram = X.transpose() * G.ldlt().solve(y);
    CHECK((b - b_gram).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
  CHECK_THROWS_AS(regression_estimates(Eigen::MatrixXd::Zero(3, 2), Eigen::VectorXd::Zero(3)),
                  std::domain_error);
}

TEST_CASE("regression power study smoke") {
  RegressionSetup s{30, 5, 1.0, 1.0};
  McConfig cfg;
  cfg.n_draws = 400;
  cfg.base_seed = 808;
  const PowerPair pp = regression_power_study(s, {0.3, 1.0}, 100, cfg);
  CHECK(pp.power_score[1] <= 0.15);  // size, loose at 100 reps
  CHECK(pp.power_kurtosis[1] <= 0.15);
  CHECK(pp.power_score[0] >= pp.power_score[1]);
}

TEST_CASE("single-statistic power curve slices the paired study") {
  ManyMeansSetup s{10, 20, 1.0, 1.0};
  McConfig cfg;
  cfg.n_draws = 2000;
  cfg.base_seed = 99;
  const std::vector<double> grid{0.3, 1.0};
  const PowerPair both = many_means_power_both(s, grid, 100, cfg);
  const PowerCurve pk = many_means_power(LassoStat::kurtosis, s, grid, 100, cfg);
  const PowerCurve ps = many_means_power(LassoStat::score, s, grid, 100, cfg);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(pk.power[i] == both.power_kurtosis[i]);
    CHECK(ps.power[i] == both.power_score[i]);
  }
  CHECK(pk.alpha == cfg.alpha);
  CHECK(pk.n_reps == 100);
}
