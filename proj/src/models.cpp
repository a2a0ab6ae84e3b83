#include "priorcheck/models.hpp"

#include <cmath>

#include "priorcheck/special_functions.hpp"

namespace priorcheck {

double normal_score(const NormalLocationModel& m, double y) {
  m.validate();
  const double v = m.sigma_sq + m.tau0_sq;
  const double d = y - m.mu0;
  return d * d / (2.0 * v * v) - 1.0 / (2.0 * v);
}

double normal_p_value(const NormalLocationModel& m, double y_obs) {
  m.validate();
  const double z = std::fabs(y_obs - m.mu0) / std::sqrt(m.sigma_sq + m.tau0_sq);
  return 2.0 * (1.0 - std_normal_cdf(z));
}

double normal_log_marginal(const NormalLocationModel& m, double y, double tau_sq) {
  m.validate();
  if (!(tau_sq > 0.0)) throw std::domain_error("normal_log_marginal: tau_sq must be > 0");
  const double v = m.sigma_sq + tau_sq;
  const double d = y - m.mu0;
  return -0.5 * std::log(2.0 * M_PI * v) - d * d / (2.0 * v);
}

CheckResult normal_mc_check(const NormalLocationModel& m, double y_obs, McConfig cfg) {
  m.validate();
  cfg.tail = Tail::upper;
  const double sd = std::sqrt(m.sigma_sq + m.tau0_sq);
  auto stat = [&m](const double& y) {
    const double d = y - m.mu0;
    return d * d;
  };
  auto sampler = [&m, sd](RngStream& rng) { return m.mu0 + sd * rng.normal(); };
  return mc_p_value<double>(stat, y_obs, sampler, cfg);
}

double binomial_score_exact(const BinomialBetaModel& m, long y) {
  m.validate();
  if (y < 0 || y > m.n) throw std::domain_error("binomial_score_exact: y out of [0, n]");
  const double ca = m.coef_a();
  const double cb = m.coef_b();
  const double nab = static_cast<double>(m.n) + m.a + m.b;
  // Data part minus the prior-normalization part; together the full
  // derivative of the log marginal at gamma = 1.
  const double data_part = ca * (digamma(static_cast<double>(y) + m.a) - digamma(nab)) +
                           cb * (digamma(static_cast<double>(m.n - y) + m.b) - digamma(nab));
  const double prior_part = ca * (digamma(m.a) - digamma(m.a + m.b)) +
                            cb * (digamma(m.b) - digamma(m.a + m.b));
  return data_part - prior_part;
}

double binomial_score_asymptotic(const BinomialBetaModel& m, long y) {
  m.validate();
  if (y < 0 || y > m.n) throw std::domain_error("binomial_score_asymptotic: y out of [0, n]");
  const double t = (static_cast<double>(y) + m.a) / (static_cast<double>(m.n) + m.a + m.b);
  return m.coef_a() * std::log(t) + m.coef_b() * std::log1p(-t);
}

double binomial_log_marginal(const BinomialBetaModel& m, long y, double gamma) {
  m.validate();
  if (y < 0 || y > m.n) throw std::domain_error("binomial_log_marginal: y out of [0, n]");
  const double base_a = (m.target == MixtureTarget::jeffreys) ? 0.5 : 1.0;
  const double da = gamma * m.a + (1.0 - gamma) * base_a;
  const double db = gamma * m.b + (1.0 - gamma) * base_a;
  if (!(da > 0.0 && db > 0.0))
    throw std::domain_error("binomial_log_marginal: mixture parameters must stay positive");
  const double ny = static_cast<double>(m.n - y);
  const double yy = static_cast<double>(y);
  const double log_choose = log_gamma(static_cast<double>(m.n) + 1.0) -
                            log_gamma(yy + 1.0) - log_gamma(ny + 1.0);
  return log_choose + log_beta(yy + da, ny + db) - log_beta(da, db);
}

NigPosterior nig_sigma_posterior(const NigModel& m, const Eigen::Ref<const Eigen::VectorXd>& y) {
  m.validate();
  const Eigen::Index n = y.size();
  if (n < 1) throw std::domain_error("nig_sigma_posterior: data must be non-empty");
  const double nd = static_cast<double>(n);
  const double ybar = y.mean();
  const double ss = (y.array() - ybar).square().sum();
  NigPosterior post;
  post.a_n = m.a + 0.5 * nd;
  post.b_n = m.b + 0.5 * ss +
             0.5 * (m.lambda0 * nd / (m.lambda0 + nd)) * (ybar - m.mu0) * (ybar - m.mu0);
  return post;
}

double nig_s1_statistic(const NigModel& m, const Eigen::Ref<const Eigen::VectorXd>& y) {
  m.validate();
  if (y.size() < 1) throw std::domain_error("nig_s1_statistic: data must be non-empty");
  const double d = y.mean() - m.mu0;
  return d * d;
}

CheckResult nig_s1_check(const NigModel& m, const Eigen::Ref<const Eigen::VectorXd>& y_obs,
                         McConfig cfg) {
  m.validate();
  const Eigen::Index n = y_obs.size();
  if (n < 1) throw std::domain_error("nig_s1_check: data must be non-empty");
  cfg.tail = Tail::upper;
  const NigPosterior post = nig_sigma_posterior(m, y_obs);

  auto theta1_post = [post](RngStream& rng) { return post.b_n / rng.gamma(post.a_n); };
  auto cond_prior = [&m](const double& sigma_sq, RngStream& rng) {
    return m.mu0 + std::sqrt(sigma_sq / m.lambda0) * rng.normal();
  };
  auto likelihood = [&m, n](const double& sigma_sq, const double& mu, RngStream& rng) {
    Eigen::VectorXd y(n);
    const double sd = std::sqrt(sigma_sq);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = mu + sd * rng.normal();
    return y;
  };
  // The conditional score is a fixed monotone function of (ybar - mu0)^2,
  // so the theta1 panel is a no-op and one draw suffices.
  auto cond_score = [&m](const Eigen::VectorXd& y, const double&) {
    const double d = y.mean() - m.mu0;
    return d * d;
  };
  return hierarchical_check<Eigen::VectorXd, double>(cond_score, theta1_post, cond_prior,
                                                     likelihood, y_obs, cfg, 1);
}

}  // namespace priorcheck
