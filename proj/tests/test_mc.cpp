#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "priorcheck/mc.hpp"
#include "priorcheck/special_functions.hpp"

using namespace priorcheck;

namespace {
McConfig small_cfg(long n_draws = 1000) {
  McConfig cfg;
  cfg.n_draws = n_draws;
  cfg.base_seed = 99;
  return cfg;
}
}  // namespace

TEST_CASE("constant statistic gives p = 1 in every tail") {
  for (Tail t : {Tail::upper, Tail::lower, Tail::two_sided}) {
    McConfig cfg = small_cfg();
    cfg.tail = t;
    auto r = mc_p_value<double>([](const double&) { return 3.14; }, 123.0,
                                [](RngStream& rng) { return rng.normal(); }, cfg);
    CHECK(r.p_value == 1.0);
  }
}

TEST_CASE("normal location check recovers the closed-form p-value") {
  // y at the 97.5% point of the predictive: two-sided p = 0.05.
  const double mu0 = 1.0, tau0_sq = 2.0, sigma_sq = 0.5;
  const double sd = std::sqrt(sigma_sq + tau0_sq);
  const double y_obs = mu0 + 1.959963984540054 * sd;
  McConfig cfg = small_cfg(100000);
  cfg.tail = Tail::two_sided;
  auto r = mc_p_value<double>([](const double& y) { return y; }, y_obs,
                              [&](RngStream& rng) { return mu0 + sd * rng.normal(); }, cfg);
  CHECK(std::fabs(r.p_value - 0.05) <= 0.005);
}

TEST_CASE("observed maximum gets the rank floor 1/(n+1)") {
  McConfig cfg = small_cfg(999);
  auto r = mc_p_value<double>([](const double& y) { return y; }, 1e9,
                              [](RngStream& rng) { return rng.normal(); }, cfg);
  CHECK(r.p_upper == doctest::Approx(1.0 / 1000.0).epsilon(1e-12));
  CHECK(r.p_lower == 1.0);
}

TEST_CASE("p-values are invariant under strictly increasing transforms") {
  McConfig cfg = small_cfg(2000);
  cfg.tail = Tail::two_sided;
  auto sampler = [](RngStream& rng) { return rng.normal(); };
  auto r1 = mc_p_value<double>([](const double& y) { return y; }, 0.73, sampler, cfg);
  auto r2 = mc_p_value<double>([](const double& y) { return std::exp(y) + 5.0; }, 0.73,
                               sampler, cfg);
  auto r3 = mc_p_value<double>([](const double& y) { return std::atan(3.0 * y); }, 0.73,
                               sampler, cfg);
  CHECK(r1.p_upper == r2.p_upper);
  CHECK(r1.p_lower == r2.p_lower);
  CHECK(r1.p_value == r3.p_value);
}

TEST_CASE("results are byte-identical across worker counts") {
  auto run = [](int workers) {
    McConfig cfg = small_cfg(20000);
    cfg.n_workers = workers;
    cfg.tail = Tail::two_sided;
    return mc_p_value<double>(
        [](const double& y, RngStream& rng) { return y + 0.001 * rng.normal(); }, 0.4,
        [](RngStream& rng) { return rng.normal(); }, cfg);
  };
  const CheckResult a = run(1), b = run(3), c = run(8);
  for (const CheckResult* r : {&b, &c}) {
    CHECK(a.statistic_obs == r->statistic_obs);
    CHECK(a.p_value == r->p_value);
    CHECK(a.p_upper == r->p_upper);
    CHECK(a.p_lower == r->p_lower);
    CHECK(a.draws_summary.mean == r->draws_summary.mean);
    CHECK(a.draws_summary.sd == r->draws_summary.sd);
    CHECK(a.draws_summary.min == r->draws_summary.min);
    CHECK(a.draws_summary.max == r->draws_summary.max);
  }
}

TEST_CASE("non-finite statistics beyond 0.1% raise with stream context") {
  McConfig cfg = small_cfg(1000);
  auto bad_stat = [](const double& y) {
    return (y > -0.5) ? std::numeric_limits<double>::quiet_NaN() : y;
  };
  try {
    mc_p_value<double>(bad_stat, -1.0, [](RngStream& rng) { return rng.normal(); }, cfg);
    FAIL("expected a runtime_error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("stream") != std::string::npos);
    CHECK(msg.find("99") != std::string::npos);  // the seed
  }
}

TEST_CASE("a stray non-finite draw below the threshold is tolerated") {
  McConfig cfg = small_cfg(10000);
  cfg.n_workers = 1;
  long hits = 0;
  auto rare_bad = [&hits](const double& y) {
    // poison exactly one replicate
    if (y > 4.2 && hits == 0) {
      ++hits;
      return std::numeric_limits<double>::quiet_NaN();
    }
    return y;
  };
  auto r = mc_p_value<double>(rare_bad, 0.0, [](RngStream& rng) { return rng.normal(); }, cfg);
  CHECK(std::isfinite(r.p_value));
}

TEST_CASE("mixture score is zero when q equals g") {
  RngStream rng(3, 0);
  Eigen::MatrixXd draws(500, 1);
  for (int i = 0; i < 500; ++i) draws(i, 0) = rng.normal();
  const double s = mixture_score(
      [](const Eigen::Ref<const Eigen::VectorXd>&) { return 0.0; }, draws);
  CHECK(std::fabs(s) < 1e-15);
}

TEST_CASE("mixture score matches 1D quadrature, normal case") {
  // g = N(0,1), q = N(0,2), posterior = N(0,1) (no data).
  auto log_ratio = [](double t) {
    const double lg = -0.5 * std::log(2.0 * M_PI) - 0.5 * t * t;
    const double lq = -0.5 * std::log(4.0 * M_PI) - 0.25 * t * t;
    return lq - lg;
  };
  const double expected = oracles::integrate(
      [&](double t) {
        const double post = std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI);
        return std::exp(log_ratio(t)) * post;
      },
      -12.0, 12.0, 1e-10) - 1.0;
  RngStream rng(4, 0);
  const int n = 400000;
  Eigen::MatrixXd draws(n, 1);
  for (int i = 0; i < n; ++i) draws(i, 0) = rng.normal();
  const double s = mixture_score(
      [&](const Eigen::Ref<const Eigen::VectorXd>& t) { return log_ratio(t[0]); }, draws);
  CHECK(std::fabs(s - expected) <= 0.005);
}

TEST_CASE("mixture score matches quadrature, beta/Jeffreys on binomial") {
  // g = Beta(2,2), q = Jeffreys Beta(1/2,1/2), posterior Beta(7,7)
  // (n = 10, y = 5, a = b = 2).
  const double lg_norm = -log_beta(2.0, 2.0);
  const double lq_norm = -log_beta(0.5, 0.5);
  auto log_ratio = [&](double t) {
    const double lg = lg_norm + std::log(t) + std::log1p(-t);
    const double lq = lq_norm - 0.5 * std::log(t) - 0.5 * std::log1p(-t);
    return lq - lg;
  };
  const double post_norm = -log_beta(7.0, 7.0);
  const double expected = oracles::integrate(
      [&](double t) {
        const double lpost = post_norm + 6.0 * std::log(t) + 6.0 * std::log1p(-t);
        return std::exp(log_ratio(t) + lpost);
      },
      1e-12, 1.0 - 1e-12, 1e-10) - 1.0;
  RngStream rng(5, 0);
  const int n = 400000;
  Eigen::MatrixXd draws(n, 1);
  for (int i = 0; i < n; ++i) draws(i, 0) = rng.beta(7.0, 7.0);
  const double s = mixture_score(
      [&](const Eigen::Ref<const Eigen::VectorXd>& t) { return log_ratio(t[0]); }, draws);
  CHECK(std::fabs(s - expected) <= 0.01);
}

TEST_CASE("mixture score flags support mismatches") {
  Eigen::MatrixXd draws(3, 1);
  draws << 0.1, 0.5, 0.9;
  auto log_ratio = [](const Eigen::Ref<const Eigen::VectorXd>& t) {
    return (t[0] > 0.6) ? -std::numeric_limits<double>::infinity() : 0.0;
  };
  CHECK_THROWS_AS(mixture_score(log_ratio, draws), std::runtime_error);
}

TEST_CASE("power curve has the right size and grows away from the null") {
  // Closed-form normal check: data y ~ N(gamma, 1), two-sided p against
  // the N(0, 1) null.
  auto check_p = [](double gamma, long rep) {
    RngStream rng(777, static_cast<std::uint64_t>(rep) * 7 +
                           static_cast<std::uint64_t>(gamma * 512.0) * 1000003u);
    const double y = gamma + rng.normal();
    const double pu = 1.0 - std_normal_cdf(y);
    return std::min(1.0, 2.0 * std::min(pu, 1.0 - pu));
  };
  McConfig cfg;
  cfg.n_draws = 1000;
  cfg.alpha = 0.05;
  const PowerCurve pc = power_curve(check_p, {0.0, 1.0, 3.0}, 2000, cfg);
  CHECK(std::fabs(pc.power[0] - 0.05) <= 3.0 * std::sqrt(0.05 * 0.95 / 2000.0));
  CHECK(pc.power[1] > pc.power[0]);
  CHECK(pc.power[2] > 0.8);
}

TEST_CASE("power curve propagates failures with context") {
  auto check_p = [](double gamma, long rep) -> double {
    if (gamma > 0.5 && rep == 3) throw std::runtime_error("inner boom");
    return 0.5;
  };
  McConfig cfg;
  cfg.n_draws = 1000;
  try {
    power_curve(check_p, {0.0, 1.0}, 10, cfg);
    FAIL("expected a runtime_error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("gamma") != std::string::npos);
    CHECK(msg.find("replicate") != std::string::npos);
  }
}

TEST_CASE("degenerate theta1 posterior reduces the hierarchical check to mc_p_value") {
  McConfig cfg = small_cfg(5000);
  cfg.tail = Tail::upper;
  auto cond_score = [](const double& y, const double&) { return y * y; };
  auto theta1_post = [](RngStream&) { return 1.0; };  // point mass, no draws
  auto cond_prior = [](const double&, RngStream& rng) { return rng.normal(); };
  auto likelihood = [](const double&, const double& t2, RngStream& rng) {
    return t2 + 0.5 * rng.normal();
  };
  const CheckResult h = hierarchical_check<double, double>(
      cond_score, theta1_post, cond_prior, likelihood, 1.7, cfg, 1);

  auto stat = [](const double& y) { return y * y; };
  auto sampler = [](RngStream& rng) {
    const double t2 = rng.normal();
    return t2 + 0.5 * rng.normal();
  };
  const CheckResult d = mc_p_value<double>(stat, 1.7, sampler, cfg);
  CHECK(h.p_value == d.p_value);
  CHECK(h.statistic_obs == d.statistic_obs);
  CHECK(h.draws_summary.mean == d.draws_summary.mean);
}

TEST_CASE("null p-values are uniform (engine calibration)") {
  // Normal-location model: y from the predictive, checked against the
  // same predictive; the p-value sample must look uniform.
  const int n_rep = 2000;
  std::vector<double> ps;
  ps.reserve(n_rep);
  for (int r = 0; r < n_rep; ++r) {
    RngStream rng(31415, 900000 + static_cast<std::uint64_t>(r));
    const double y_obs = rng.normal();
    McConfig cfg;
    cfg.n_draws = 999;
    cfg.base_seed = 1000 + static_cast<std::uint64_t>(r);
    cfg.tail = Tail::two_sided;
    const auto res = mc_p_value<double>([](const double& y) { return y; }, y_obs,
                                        [](RngStream& g) { return g.normal(); }, cfg);
    ps.push_back(res.p_value);
  }
  CHECK(oracles::ks_uniform(ps) < 0.05);
}

TEST_CASE("config validation names the field") {
  McConfig cfg;
  cfg.n_draws = 10;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("n_draws"), std::domain_error);
  cfg.n_draws = 1000;
  cfg.alpha = 1.5;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("alpha"), std::domain_error);
}
