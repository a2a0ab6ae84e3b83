#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace priorcheck {

// Reproducible random streams for the Monte-Carlo engines.
//
// The generator is Philox4x32-10, a counter-based construction: the key
// holds the 64-bit base seed, the 128-bit counter holds (draw index,
// stream id). Streams with distinct ids are therefore disjoint segments
// of one keyed permutation, so Monte-Carlo work can be partitioned over
// streams without any coordination, and results never depend on worker
// count or scheduling. Identical (base_seed, stream_id, call sequence)
// gives bit-identical output on every platform.
//
// A RngStream is single-owner: share across threads by giving each
// thread its own stream_id, never by sharing one object mutably.
class RngStream {
 public:
  RngStream(std::uint64_t base_seed, std::uint64_t stream_id)
      : key_lo_(static_cast<std::uint32_t>(base_seed)),
        key_hi_(static_cast<std::uint32_t>(base_seed >> 32)),
        stream_id_(stream_id) {}

  std::uint64_t base_seed() const {
    return key_lo_ | (static_cast<std::uint64_t>(key_hi_) << 32);
  }
  std::uint64_t stream_id() const { return stream_id_; }

  // Raw 64 uniform bits.
  std::uint64_t next_u64() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    std::uint32_t c[4];
    block(counter_++, c);
    spare_ = c[2] | (static_cast<std::uint64_t>(c[3]) << 32);
    have_spare_ = true;
    return c[0] | (static_cast<std::uint64_t>(c[1]) << 32);
  }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via inverse-CDF; one uniform per draw.
  double normal();

  // Gamma(shape, scale 1) via Marsaglia-Tsang, with the U^{1/a} boost
  // for shape < 1. shape must be > 0.
  double gamma(double shape);

  double beta(double a, double b);
  double exponential();

  // Binomial(n, p) by beta order-statistic recursion; exact for all n.
  long binomial(long n, double p);

 private:
  void block(std::uint64_t ctr, std::uint32_t out[4]) const;

  std::uint32_t key_lo_, key_hi_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::uint64_t spare_ = 0;
  bool have_spare_ = false;
};

// Vector samplers. Each fills or returns an Eigen container; parameters
// are validated and a std::domain_error names the offending field.

// i.i.d. standard normals.
Eigen::VectorXd sample_normal(RngStream& rng, Eigen::Index n);

// Exponential power draws with density
//   g(v|tau,q) = q/(2 tau) (G3/G1^3)^{1/2} exp{ -(G3/G1)^{q/2} |v/tau|^q },
// G_k = Gamma(k/q): mean 0, variance tau^2; q=2 normal, q=1 Laplace
// rescaled by tau/sqrt(2). Construction: U ~ Gamma(1/q), W = U^{1/q},
// v = sign * tau * W / sqrt(G3/G1).
Eigen::VectorXd sample_exp_power(RngStream& rng, double tau, double q,
                                 Eigen::Index n);

// Dirichlet(alpha) via normalized gammas.
Eigen::VectorXd sample_dirichlet(RngStream& rng,
                                 const Eigen::Ref<const Eigen::VectorXd>& alpha);

// Multinomial counts; theta must be a probability vector.
Eigen::VectorXi sample_multinomial(RngStream& rng, long n_trials,
                                   const Eigen::Ref<const Eigen::VectorXd>& theta);

// Inverse gamma: 1 / Gamma(a, rate b).
Eigen::VectorXd sample_inverse_gamma(RngStream& rng, double a, double b,
                                     Eigen::Index n);

}  // namespace priorcheck
