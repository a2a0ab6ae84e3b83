// Test-only oracles, independent of the library implementation paths
// they are used to check.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// erf by Taylor series (long double accumulation); good to ~1e-16 for
// |x| <= 5, which covers every quantile the tests need.
inline double erf_series(double x) {
  const long double z = x;
  long double term = z;
  long double sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z * z / static_cast<long double>(n);
    const long double add = term / (2.0L * n + 1.0L);
    sum += add;
    if (std::fabs(static_cast<double>(add)) < 1e-20) break;
  }
  return static_cast<double>(sum * 2.0L / std::sqrt(M_PIl));
}

inline double normal_cdf_series(double x) {
  return 0.5 * (1.0 + erf_series(x / std::sqrt(2.0)));
}

// Standard normal quantile by bisection on the series CDF.
inline double normal_quantile_bisect(double p) {
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf_series(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Digamma by recurrence up to x + 20 and a short asymptotic expansion;
// independent construction from the library's shift-to-10 version.
inline double digamma_shift20(double x) {
  double acc = 0.0;
  for (int k = 0; k < 20; ++k) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double z = 1.0 / x;
  const double z2 = z * z;
  return acc + std::log(x) - 0.5 * z -
         z2 * (1.0 / 12.0 - z2 * (1.0 / 120.0 - z2 / 252.0));
}

// Adaptive Simpson quadrature.
namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}
inline double adapt(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0) return left + right;
  if (std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return detail::adapt(f, a, b, fa, fm, fb, detail::simpson(f, a, b, fa, fm, fb), tol, 40);
}

// Kolmogorov-Smirnov distance of a sample against a continuous CDF.
inline double ks_distance(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double c = cdf(sample[i]);
    d = std::max(d, std::fabs(c - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(c - static_cast<double>(i + 1) / n));
  }
  return d;
}

inline double ks_uniform(const std::vector<double>& sample) {
  return ks_distance(sample, [](double x) { return std::clamp(x, 0.0, 1.0); });
}

// Two-sample energy test p-value by permutation, for small samples of
// 3-vectors.
inline double energy_test_p(const std::vector<std::array<double, 3>>& a,
                            const std::vector<std::array<double, 3>>& b,
                            int n_perm, std::uint64_t seed) {
  auto dist = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
    const double d0 = x[0] - y[0], d1 = x[1] - y[1], d2 = x[2] - y[2];
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
  };
  std::vector<std::array<double, 3>> pool(a);
  pool.insert(pool.end(), b.begin(), b.end());
  const std::size_t n = a.size(), m = b.size(), t = n + m;
  std::vector<std::vector<float>> d(t, std::vector<float>(t, 0.f));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      d[i][j] = d[j][i] = static_cast<float>(dist(pool[i], pool[j]));
  auto stat_for = [&](const std::vector<std::size_t>& idx) {
    double within_a = 0, within_b = 0, between = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) within_a += d[idx[i]][idx[j]];
    for (std::size_t i = n; i < t; ++i)
      for (std::size_t j = n; j < t; ++j) within_b += d[idx[i]][idx[j]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = n; j < t; ++j) between += d[idx[i]][idx[j]];
    return 2.0 * between / (static_cast<double>(n) * m) -
           within_a / (static_cast<double>(n) * n) -
           within_b / (static_cast<double>(m) * m);
  };
  std::vector<std::size_t> idx(t);
  for (std::size_t i = 0; i < t; ++i) idx[i] = i;
  const double observed = stat_for(idx);
  // simple splitmix shuffle for reproducibility
  std::uint64_t state = seed;
  auto next = [&state]() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  int exceed = 0;
  for (int p = 0; p < n_perm; ++p) {
    for (std::size_t i = t - 1; i > 0; --i) std::swap(idx[i], idx[next() % (i + 1)]);
    if (stat_for(idx) >= observed) ++exceed;
  }
  return (1.0 + exceed) / (1.0 + n_perm);
}

// Spearman rank correlation.
inline double rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("rank_correlation: size mismatch");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const std::vector<double> ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(da * db);
}

}  // namespace oracles
