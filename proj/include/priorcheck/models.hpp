#pragma once

#include <Eigen/Core>

#include "priorcheck/mc.hpp"

namespace priorcheck {

// Closed-form conjugate models. Each exposes its analytic score statistic
// and p-value next to the Monte-Carlo route so the two can be
// cross-validated.

// Known-variance normal with a normal prior on the location; the prior
// variance is the expansion parameter. A sample of size n reduces to its
// mean (sufficiency), so the model works on a single observation.
struct NormalLocationModel {
  double mu0 = 0.0;
  double tau0_sq = 1.0;   // prior variance
  double sigma_sq = 1.0;  // known sampling variance

  void validate() const {
    if (!(tau0_sq > 0.0)) throw std::domain_error("NormalLocationModel: tau0_sq must be > 0");
    if (!(sigma_sq > 0.0)) throw std::domain_error("NormalLocationModel: sigma_sq must be > 0");
  }
};

// d/d(tau^2) log p(y|tau^2) at tau0^2: the exact derivative, a monotone
// function of (y - mu0)^2.
double normal_score(const NormalLocationModel& m, double y);

// Closed-form conflict p-value 2(1 - Phi(|y - mu0| / sqrt(sigma^2 + tau0^2))).
double normal_p_value(const NormalLocationModel& m, double y_obs);

// Marginal log density log p(y|tau^2) with the prior variance free; used
// by the score/finite-difference identity checks.
double normal_log_marginal(const NormalLocationModel& m, double y, double tau_sq);

// Monte-Carlo counterpart of normal_p_value: upper tail on (y - mu0)^2
// under the prior predictive.
CheckResult normal_mc_check(const NormalLocationModel& m, double y_obs, McConfig cfg);

// Binomial(n, theta) with Beta(a, b) prior; the expansion is a geometric
// mixture of the prior with either the Jeffreys or the uniform prior,
// indexed by gamma with the original prior at gamma = 1.
enum class MixtureTarget { jeffreys, uniform };

struct BinomialBetaModel {
  long n = 1;
  double a = 1.0;
  double b = 1.0;
  MixtureTarget target = MixtureTarget::jeffreys;

  void validate() const {
    if (n < 1) throw std::domain_error("BinomialBetaModel: n must be >= 1");
    if (!(a > 0.0)) throw std::domain_error("BinomialBetaModel: a must be > 0");
    if (!(b > 0.0)) throw std::domain_error("BinomialBetaModel: b must be > 0");
  }
  // Mixture-coefficient pair: (a-1/2, b-1/2) for Jeffreys, (a-1, b-1)
  // for uniform.
  double coef_a() const { return target == MixtureTarget::jeffreys ? a - 0.5 : a - 1.0; }
  double coef_b() const { return target == MixtureTarget::jeffreys ? b - 0.5 : b - 1.0; }
};

// Exact derivative of the log beta-binomial marginal in gamma at
// gamma = 1, including the prior-normalization digamma terms, so it
// equals the posterior expectation of the log-prior derivative.
double binomial_score_exact(const BinomialBetaModel& m, long y);

// Leading term: coef_a log(theta~) + coef_b log(1 - theta~) with
// theta~ = (y + a) / (n + a + b); the remainder is O(1/n).
double binomial_score_asymptotic(const BinomialBetaModel& m, long y);

// log p(y|gamma) for the mixture prior at gamma (beta-binomial with the
// blended beta parameters), via log-beta differences.
double binomial_log_marginal(const BinomialBetaModel& m, long y, double gamma);

// Normal-inverse-gamma hierarchical model:
// sigma^2 ~ IG(a, b), mu|sigma^2 ~ N(mu0, sigma^2/lambda0),
// y_i|mu,sigma^2 ~ N(mu, sigma^2). The conditional prior on mu is the
// component checked.
struct NigModel {
  double mu0 = 0.0;
  double lambda0 = 1.0;
  double a = 2.0;
  double b = 1.0;

  void validate() const {
    if (!(lambda0 > 0.0)) throw std::domain_error("NigModel: lambda0 must be > 0");
    if (!(a > 0.0)) throw std::domain_error("NigModel: a must be > 0");
    if (!(b > 0.0)) throw std::domain_error("NigModel: b must be > 0");
  }
};

// Conjugate posterior parameters of sigma^2 given the data.
struct NigPosterior {
  double a_n = 0.0;
  double b_n = 0.0;
};
NigPosterior nig_sigma_posterior(const NigModel& m, const Eigen::Ref<const Eigen::VectorXd>& y);

// The hierarchical check statistic for the conditional mean prior:
// (ybar - mu0)^2.
double nig_s1_statistic(const NigModel& m, const Eigen::Ref<const Eigen::VectorXd>& y);

// Hierarchical check: sigma^2 from its posterior given y_obs, mu from
// the conditional prior, replicate data from the likelihood; upper tail
// on (ybar - mu0)^2.
CheckResult nig_s1_check(const NigModel& m, const Eigen::Ref<const Eigen::VectorXd>& y_obs,
                         McConfig cfg);

}  // namespace priorcheck
