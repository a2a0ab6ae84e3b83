#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "priorcheck/rng.hpp"

namespace priorcheck {

inline constexpr std::uint64_t kDefaultBaseSeed = 123456789;

enum class Tail { upper, lower, two_sided };

std::string to_string(Tail t);
Tail tail_from_string(const std::string& s);

struct McConfig {
  long n_draws = 10000;
  int n_workers = 1;
  std::uint64_t base_seed = kDefaultBaseSeed;
  Tail tail = Tail::upper;
  double alpha = 0.05;
  // Separates the stream-id space of independent engine invocations that
  // share one base seed.
  std::uint64_t stream_domain = 0;

  void validate() const {
    if (n_draws < 100) throw std::domain_error("McConfig: n_draws must be >= 100");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::domain_error("McConfig: alpha must be in (0, 1)");
    if (n_workers < 1) throw std::domain_error("McConfig: n_workers must be >= 1");
  }
};

struct DrawsSummary {
  double mean = 0.0, sd = 0.0, min = 0.0, max = 0.0;
};

struct CheckResult {
  double statistic_obs = 0.0;
  double p_value = 1.0;     // tail-selected
  double p_upper = 1.0;     // P(S >= s_obs), add-one rank estimate
  double p_lower = 1.0;     // P(S <= s_obs)
  long n_draws = 0;
  Tail tail = Tail::upper;
  std::uint64_t base_seed = 0;
  DrawsSummary draws_summary;
};

struct PowerCurve {
  std::vector<double> gamma_grid;
  std::vector<double> power;
  long n_reps = 0;
  double alpha = 0.05;
  std::uint64_t base_seed = 0;
};

// Runs body(begin, end) over [0, n) in fixed-size chunks. Work items must
// write only to their own slots; the chunk->thread assignment is dynamic
// but the item->index mapping is fixed, so results are scheduling-free.
void parallel_for_chunks(long n, int n_workers,
                         const std::function<void(long, long)>& body);

// Add-one rank p-values against a reference sample sorted ascending.
inline double p_upper_sorted(const std::vector<double>& sorted_ref, double s_obs) {
  const auto it = std::lower_bound(sorted_ref.begin(), sorted_ref.end(), s_obs);
  const auto n_ge = static_cast<long>(sorted_ref.end() - it);
  return (1.0 + static_cast<double>(n_ge)) / (static_cast<double>(sorted_ref.size()) + 1.0);
}

inline double p_lower_sorted(const std::vector<double>& sorted_ref, double s_obs) {
  const auto it = std::upper_bound(sorted_ref.begin(), sorted_ref.end(), s_obs);
  const auto n_le = static_cast<long>(it - sorted_ref.begin());
  return (1.0 + static_cast<double>(n_le)) / (static_cast<double>(sorted_ref.size()) + 1.0);
}

inline double two_sided_from_tails(double p_up, double p_lo) {
  return std::min(1.0, 2.0 * std::min(p_up, p_lo));
}

inline double select_tail(Tail tail, double p_up, double p_lo) {
  switch (tail) {
    case Tail::upper: return p_up;
    case Tail::lower: return p_lo;
    case Tail::two_sided: return two_sided_from_tails(p_up, p_lo);
  }
  return p_up;
}

namespace detail {

template <class Stat, class Data>
double invoke_stat(Stat&& stat, const Data& data, RngStream& rng) {
  if constexpr (std::is_invocable_r_v<double, Stat, const Data&, RngStream&>)
    return stat(data, rng);
  else
    return stat(data);
}

CheckResult finish_check(double s_obs, const std::vector<double>& sims,
                         const McConfig& cfg, long n_bad,
                         std::uint64_t first_bad_stream);

}  // namespace detail

// Generic prior predictive check. Simulates cfg.n_draws replicate data
// sets from `sampler`, evaluates `statistic` on each and on `obs_data`,
// and calibrates by rank. `statistic` may be double(const Data&) or
// double(const Data&, RngStream&) when its evaluation is itself Monte
// Carlo; `sampler` is Data(RngStream&). Both must be safe to call
// concurrently on distinct streams. Replicate i owns stream ids
// (domain<<32)+1+2i and +2+2i; the observed statistic uses (domain<<32).
template <class Data, class Stat, class Sampler>
CheckResult mc_p_value(Stat&& statistic, const Data& obs_data, Sampler&& sampler,
                       const McConfig& cfg) {
  cfg.validate();
  const std::uint64_t base = cfg.stream_domain << 32;

  RngStream obs_rng(cfg.base_seed, base);
  const double s_obs = detail::invoke_stat(statistic, obs_data, obs_rng);
  if (!std::isfinite(s_obs))
    throw std::runtime_error("mc_p_value: observed statistic is not finite (seed " +
                             std::to_string(cfg.base_seed) + ", stream " +
                             std::to_string(base) + ")");

  std::vector<double> sims(static_cast<std::size_t>(cfg.n_draws));
  std::atomic<long> n_bad{0};
  std::atomic<std::uint64_t> first_bad{std::numeric_limits<std::uint64_t>::max()};

  parallel_for_chunks(cfg.n_draws, cfg.n_workers, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      RngStream data_rng(cfg.base_seed, base + 1 + 2 * static_cast<std::uint64_t>(i));
      RngStream stat_rng(cfg.base_seed, base + 2 + 2 * static_cast<std::uint64_t>(i));
      const Data rep = sampler(data_rng);
      const double s = detail::invoke_stat(statistic, rep, stat_rng);
      sims[static_cast<std::size_t>(i)] = s;
      if (!std::isfinite(s)) {
        n_bad.fetch_add(1, std::memory_order_relaxed);
        std::uint64_t expect = std::numeric_limits<std::uint64_t>::max();
        first_bad.compare_exchange_strong(expect, data_rng.stream_id());
      }
    }
  });

  return detail::finish_check(s_obs, sims, cfg, n_bad.load(), first_bad.load());
}

// Power of a parameterized check over an expansion-parameter grid.
// `check_p` maps (gamma, replicate index) to a p-value and must be
// deterministic in its arguments; power[i] is the fraction of replicates
// with p <= cfg.alpha. Parallelizes over (grid point, replicate) pairs.
PowerCurve power_curve(const std::function<double(double, long)>& check_p,
                       const std::vector<double>& gamma_grid, long n_reps,
                       const McConfig& cfg);

// Hierarchical conditional-prior check. The statistic for any data set y
// is the average of cond_score(y, theta1) over a fixed panel of theta1
// draws from the posterior given the observed data; reference replicates
// are built as theta1 ~ posterior(.|y_obs), theta2 ~ conditional prior,
// y ~ likelihood. Samplers: theta1_post(RngStream&)->Theta1,
// cond_prior(const Theta1&, RngStream&)->Theta2,
// likelihood(const Theta1&, const Theta2&, RngStream&)->Data.
template <class Data, class Theta1, class CondScore, class Theta1Post,
          class CondPrior, class Likelihood>
CheckResult hierarchical_check(CondScore&& cond_score, Theta1Post&& theta1_post,
                               CondPrior&& cond_prior, Likelihood&& likelihood,
                               const Data& obs_data, const McConfig& cfg,
                               long n_theta1_draws = 1000) {
  if (n_theta1_draws < 1)
    throw std::domain_error("hierarchical_check: n_theta1_draws must be >= 1");
  // Fixed theta1 panel, shared by the observed and every replicate
  // statistic; lives in its own stream-id region above the replicate ids.
  const std::uint64_t panel_base =
      (cfg.stream_domain << 32) + 3 + 2 * static_cast<std::uint64_t>(cfg.n_draws);
  std::vector<Theta1> panel;
  panel.reserve(static_cast<std::size_t>(n_theta1_draws));
  for (long m = 0; m < n_theta1_draws; ++m) {
    RngStream rng(cfg.base_seed, panel_base + static_cast<std::uint64_t>(m));
    panel.push_back(theta1_post(rng));
  }

  auto statistic = [&](const Data& y) {
    double acc = 0.0;
    for (const Theta1& t1 : panel) acc += cond_score(y, t1);
    return acc / static_cast<double>(n_theta1_draws);
  };
  auto sampler = [&](RngStream& rng) {
    const Theta1 t1 = theta1_post(rng);
    const auto t2 = cond_prior(t1, rng);
    return likelihood(t1, t2, rng);
  };
  return mc_p_value<Data>(statistic, obs_data, sampler, cfg);
}

// Monte-Carlo estimate of E[q(theta)/g(theta) | y] - 1 for the arithmetic
// mixture expansion g(theta|gamma) = (1-gamma) g + gamma q, from
// posterior draws (one per row). log_density_ratio(theta) = log q - log g
// must be finite on every draw; a non-finite value signals a support
// mismatch and throws.
double mixture_score(
    const std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>& log_density_ratio,
    const Eigen::Ref<const Eigen::MatrixXd>& posterior_draws);

}  // namespace priorcheck
