#include "priorcheck/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "priorcheck/special_functions.hpp"

namespace priorcheck {

namespace {
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t n0 = hi1 ^ c[1] ^ k0;
  const std::uint32_t n2 = hi0 ^ c[3] ^ k1;
  c[0] = n0;
  c[1] = lo1;
  c[2] = n2;
  c[3] = lo0;
}
}  // namespace

void RngStream::block(std::uint64_t ctr, std::uint32_t out[4]) const {
  out[0] = static_cast<std::uint32_t>(ctr);
  out[1] = static_cast<std::uint32_t>(ctr >> 32);
  out[2] = static_cast<std::uint32_t>(stream_id_);
  out[3] = static_cast<std::uint32_t>(stream_id_ >> 32);
  std::uint32_t k0 = key_lo_, k1 = key_hi_;
  for (int r = 0; r < 10; ++r) {
    philox_round(out, k0, k1);
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
}

double RngStream::normal() { return std_normal_quantile(uniform()); }

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be > 0");
  if (shape < 1.0) {
    // Boost: G(a) = G(a+1) * U^{1/a}.
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

double RngStream::exponential() { return -std::log(uniform()); }

long RngStream::binomial(long n, double p) {
  if (n < 0) throw std::domain_error("binomial: n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial: p in [0,1]");
  long count = 0;
  // Order-statistic recursion keeps the expensive part O(log n).
  while (n > 32) {
    const long a = 1 + n / 2;
    const double x = beta(static_cast<double>(a), static_cast<double>(n - a + 1));
    if (x >= p) {
      n = a - 1;
      p /= x;
    } else {
      count += a;
      n -= a;
      p = (p - x) / (1.0 - x);
    }
  }
  for (long i = 0; i < n; ++i)
    if (uniform() < p) ++count;
  return count;
}

Eigen::VectorXd sample_normal(RngStream& rng, Eigen::Index n) {
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = rng.normal();
  return out;
}

Eigen::VectorXd sample_exp_power(RngStream& rng, double tau, double q,
                                 Eigen::Index n) {
  if (!(tau > 0.0)) throw std::domain_error("sample_exp_power: tau must be > 0");
  if (!(q > 0.0)) throw std::domain_error("sample_exp_power: q must be > 0");
  const double c = std::exp(0.5 * (log_gamma(3.0 / q) - log_gamma(1.0 / q)));
  const double scale = tau / c;
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = rng.gamma(1.0 / q);
    const double w = std::pow(u, 1.0 / q);
    const bool neg = (rng.next_u64() & 1u) != 0;
    out[i] = neg ? -scale * w : scale * w;
  }
  return out;
}

Eigen::VectorXd sample_dirichlet(RngStream& rng,
                                 const Eigen::Ref<const Eigen::VectorXd>& alpha) {
  const Eigen::Index k = alpha.size();
  Eigen::VectorXd out(k);
  double total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(alpha[i] > 0.0))
      throw std::domain_error("sample_dirichlet: all alpha must be > 0");
    out[i] = rng.gamma(alpha[i]);
    total += out[i];
  }
  out /= total;
  return out;
}

Eigen::VectorXi sample_multinomial(RngStream& rng, long n_trials,
                                   const Eigen::Ref<const Eigen::VectorXd>& theta) {
  if (n_trials < 0)
    throw std::domain_error("sample_multinomial: n_trials must be >= 0");
  const Eigen::Index k = theta.size();
  if ((theta.array() < 0.0).any() || std::fabs(theta.sum() - 1.0) > 1e-12)
    throw std::domain_error("sample_multinomial: theta must be a probability vector");
  Eigen::VectorXi out = Eigen::VectorXi::Zero(k);
  long remaining = n_trials;
  double mass = 1.0;
  for (Eigen::Index i = 0; i + 1 < k && remaining > 0; ++i) {
    const double cond = std::clamp(theta[i] / mass, 0.0, 1.0);
    const long c = rng.binomial(remaining, cond);
    out[i] = static_cast<int>(c);
    remaining -= c;
    mass -= theta[i];
    if (mass <= 0.0) break;
  }
  out[k - 1] = static_cast<int>(remaining);
  return out;
}

Eigen::VectorXd sample_inverse_gamma(RngStream& rng, double a, double b,
                                     Eigen::Index n) {
  if (!(a > 0.0)) throw std::domain_error("sample_inverse_gamma: a must be > 0");
  if (!(b > 0.0)) throw std::domain_error("sample_inverse_gamma: b must be > 0");
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = b / rng.gamma(a);
  return out;
}

}  // namespace priorcheck
