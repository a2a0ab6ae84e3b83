#include "priorcheck/mc.hpp"

namespace priorcheck {

std::string to_string(Tail t) {
  switch (t) {
    case Tail::upper: return "upper";
    case Tail::lower: return "lower";
    case Tail::two_sided: return "two_sided";
  }
  return "upper";
}

Tail tail_from_string(const std::string& s) {
  if (s == "upper") return Tail::upper;
  if (s == "lower") return Tail::lower;
  if (s == "two_sided" || s == "two-sided") return Tail::two_sided;
  throw std::domain_error("unknown tail mode: " + s);
}

void parallel_for_chunks(long n, int n_workers,
                         const std::function<void(long, long)>& body) {
  if (n <= 0) return;
  constexpr long kChunk = 256;
  if (n_workers <= 1 || n <= kChunk) {
    body(0, n);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const long lo = next.fetch_add(kChunk, std::memory_order_relaxed);
      if (lo >= n) return;
      const long hi = std::min(lo + kChunk, n);
      try {
        body(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace detail {

CheckResult finish_check(double s_obs, const std::vector<double>& sims,
                         const McConfig& cfg, long n_bad,
                         std::uint64_t first_bad_stream) {
  const long n = static_cast<long>(sims.size());
  if (n_bad > 0 && static_cast<double>(n_bad) > 0.001 * static_cast<double>(n))
    throw std::runtime_error(
        "mc_p_value: statistic not finite on " + std::to_string(n_bad) + " of " +
        std::to_string(n) + " draws (seed " + std::to_string(cfg.base_seed) +
        ", first offending stream " + std::to_string(first_bad_stream) + ")");

  long n_ge = 0, n_le = 0;
  double mean = 0.0, m2 = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  long n_ok = 0;
  for (double s : sims) {
    if (!std::isfinite(s)) continue;  // below the error threshold: drop
    if (s >= s_obs) ++n_ge;
    if (s <= s_obs) ++n_le;
    ++n_ok;
    const double d = s - mean;
    mean += d / static_cast<double>(n_ok);
    m2 += d * (s - mean);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }

  CheckResult r;
  r.statistic_obs = s_obs;
  r.n_draws = n;
  r.tail = cfg.tail;
  r.base_seed = cfg.base_seed;
  r.p_upper = (1.0 + static_cast<double>(n_ge)) / (static_cast<double>(n) + 1.0);
  r.p_lower = (1.0 + static_cast<double>(n_le)) / (static_cast<double>(n) + 1.0);
  r.p_value = select_tail(cfg.tail, r.p_upper, r.p_lower);
  r.draws_summary.mean = mean;
  r.draws_summary.sd = (n_ok > 1) ? std::sqrt(m2 / static_cast<double>(n_ok - 1)) : 0.0;
  r.draws_summary.min = lo;
  r.draws_summary.max = hi;
  return r;
}

}  // namespace detail

PowerCurve power_curve(const std::function<double(double, long)>& check_p,
                       const std::vector<double>& gamma_grid, long n_reps,
                       const McConfig& cfg) {
  cfg.validate();
  if (n_reps < 1) throw std::domain_error("power_curve: n_reps must be >= 1");
  const long g = static_cast<long>(gamma_grid.size());
  std::vector<int> reject(static_cast<std::size_t>(g * n_reps), 0);

  parallel_for_chunks(g * n_reps, cfg.n_workers, [&](long lo, long hi) {
    for (long k = lo; k < hi; ++k) {
      const long i = k / n_reps;
      const long j = k % n_reps;
      double p;
      try {
        p = check_p(gamma_grid[static_cast<std::size_t>(i)], j);
      } catch (const std::exception& e) {
        throw std::runtime_error("power_curve: check failed at gamma=" +
                                 std::to_string(gamma_grid[static_cast<std::size_t>(i)]) +
                                 ", replicate " + std::to_string(j) + ": " + e.what());
      }
      reject[static_cast<std::size_t>(k)] = (p <= cfg.alpha) ? 1 : 0;
    }
  });

  PowerCurve out;
  out.gamma_grid = gamma_grid;
  out.power.resize(static_cast<std::size_t>(g));
  for (long i = 0; i < g; ++i) {
    long hits = 0;
    for (long j = 0; j < n_reps; ++j)
      hits += reject[static_cast<std::size_t>(i * n_reps + j)];
    out.power[static_cast<std::size_t>(i)] =
        static_cast<double>(hits) / static_cast<double>(n_reps);
  }
  out.n_reps = n_reps;
  out.alpha = cfg.alpha;
  out.base_seed = cfg.base_seed;
  return out;
}

double mixture_score(
    const std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>& log_density_ratio,
    const Eigen::Ref<const Eigen::MatrixXd>& posterior_draws) {
  const Eigen::Index m = posterior_draws.rows();
  if (m == 0) throw std::domain_error("mixture_score: no posterior draws");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lr = log_density_ratio(posterior_draws.row(i).transpose());
    if (!std::isfinite(lr))
      throw std::runtime_error(
          "mixture_score: log density ratio not finite on draw " + std::to_string(i) +
          " (support mismatch between q and g)");
    acc += std::exp(lr);
  }
  return acc / static_cast<double>(m) - 1.0;
}

}  // namespace priorcheck
