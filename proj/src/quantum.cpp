#include "priorcheck/quantum.hpp"

#include <cmath>

namespace priorcheck {
namespace quantum {

TrineGeometry TrineGeometry::from_angle(double g) {
  TrineGeometry geom{g};
  const double c2 = geom.cos1() * geom.cos1();
  if (!(c2 > 0.0 && c2 < 1.0))
    throw std::domain_error("TrineGeometry: cos^2(gamma) must be in (0, 1)");
  return geom;
}

TrineGeometry TrineGeometry::from_cos2(double cos2) {
  if (!(cos2 > 0.0 && cos2 < 1.0))
    throw std::domain_error("TrineGeometry: cos^2(gamma) must be in (0, 1)");
  return TrineGeometry{std::acos(std::sqrt(cos2))};
}

double TrineGeometry::sin2() const {
  const double s = std::sin(gamma);
  return s * s;
}

double TrineGeometry::cos1() const { return std::cos(gamma); }

Eigen::Vector3d theta_from_disk(const TrineGeometry& geom, double s1, double s2) {
  if (s1 * s1 + s2 * s2 > 1.0 + 1e-12)
    throw std::domain_error("theta_from_disk: (s1, s2) outside the unit disk");
  const double sg2 = geom.sin2();
  const double cg = geom.cos1();
  Eigen::Vector3d t;
  t[0] = 0.5 * sg2 * (1.0 + s1);
  t[1] = 0.25 * (1.0 + cg * cg - s1 * sg2 + 2.0 * s2 * cg);
  t[2] = 0.25 * (1.0 + cg * cg - s1 * sg2 - 2.0 * s2 * cg);
  return t;
}

Eigen::Vector2d disk_from_theta(const TrineGeometry& geom,
                                const Eigen::Ref<const Eigen::Vector3d>& theta) {
  Eigen::Vector2d s;
  s[0] = 2.0 * theta[0] / geom.sin2() - 1.0;
  s[1] = (theta[1] - theta[2]) / geom.cos1();
  return s;
}

bool constraint_satisfied(const TrineGeometry& geom,
                          const Eigen::Ref<const Eigen::Vector3d>& theta) {
  const Eigen::Vector2d s = disk_from_theta(geom, theta);
  return s.squaredNorm() <= 1.0 + 1e-12;
}

namespace {

Eigen::Vector3d dirichlet3(RngStream& rng, const Eigen::Ref<const Eigen::Vector3d>& alpha) {
  Eigen::Vector3d g;
  for (int k = 0; k < 3; ++k) g[k] = rng.gamma(alpha[k]);
  return g / g.sum();
}

[[noreturn]] void rejection_failure() {
  throw std::runtime_error(
      "constrained Dirichlet rejection: acceptance rate below 1e-4; "
      "use a reparameterized sampler for this prior/geometry");
}

}  // namespace

Eigen::Vector3d sample_constrained_dirichlet_one(RngStream& rng,
                                                 const Eigen::Ref<const Eigen::Vector3d>& alpha,
                                                 const TrineGeometry& geom) {
  for (long attempts = 1; attempts <= 1000000; ++attempts) {
    const Eigen::Vector3d t = dirichlet3(rng, alpha);
    if (constraint_satisfied(geom, t)) return t;
  }
  rejection_failure();
}

Eigen::MatrixX3d sample_constrained_dirichlet(RngStream& rng,
                                              const Eigen::Ref<const Eigen::Vector3d>& alpha,
                                              const TrineGeometry& geom, long n) {
  if ((alpha.array() <= 0.0).any())
    throw std::domain_error("sample_constrained_dirichlet: alpha must be positive");
  if (n < 1) throw std::domain_error("sample_constrained_dirichlet: n must be >= 1");
  Eigen::MatrixX3d out(n, 3);
  long accepted = 0;
  long proposals = 0;
  while (accepted < n) {
    const Eigen::Vector3d t = dirichlet3(rng, alpha);
    ++proposals;
    if (constraint_satisfied(geom, t)) {
      out.row(accepted++) = t.transpose();
    } else if (proposals >= 100000 &&
               static_cast<double>(accepted) < 1e-4 * static_cast<double>(proposals)) {
      rejection_failure();
    }
  }
  return out;
}

PosteriorLogTheta posterior_mean_log_theta(const Eigen::Ref<const Eigen::Vector3i>& y,
                                           const Eigen::Ref<const Eigen::Vector3d>& alpha,
                                           const TrineGeometry& geom, long n_draws,
                                           RngStream& rng) {
  if ((y.array() < 0).any())
    throw std::domain_error("posterior_mean_log_theta: counts must be non-negative");
  if (n_draws < 2) throw std::domain_error("posterior_mean_log_theta: n_draws must be >= 2");
  const Eigen::Vector3d post = y.cast<double>() + alpha;
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  Eigen::Vector3d sumsq = Eigen::Vector3d::Zero();
  long accepted = 0;
  long proposals = 0;
  while (accepted < n_draws) {
    const Eigen::Vector3d t = dirichlet3(rng, post);
    ++proposals;
    if (constraint_satisfied(geom, t)) {
      const Eigen::Vector3d lt = t.array().log();
      sum += lt;
      sumsq += lt.cwiseProduct(lt);
      ++accepted;
    } else if (proposals >= 100000 &&
               static_cast<double>(accepted) < 1e-4 * static_cast<double>(proposals)) {
      rejection_failure();
    }
  }
  PosteriorLogTheta r;
  const double nd = static_cast<double>(n_draws);
  r.mean = sum / nd;
  for (int k = 0; k < 3; ++k) {
    const double var = (sumsq[k] - nd * r.mean[k] * r.mean[k]) / (nd - 1.0);
    r.se[k] = std::sqrt(std::max(var, 0.0) / nd);
  }
  return r;
}

Eigen::Vector3d ExpansionFamily::delta(double gamma) const {
  Eigen::Vector3d d;
  switch (kind) {
    case ExpansionKind::g1_jeffreys_mix:
      if (gamma < 0.0 || gamma > 1.0)
        throw std::domain_error("ExpansionFamily: g1 requires gamma in [0, 1]");
      d = (1.0 - gamma) * alpha0 * q + Eigen::Vector3d::Constant(0.5 * gamma);
      break;
    case ExpansionKind::g2_location_shift: {
      d[0] = alpha0 * (q[0] + gamma);
      d[1] = alpha0 * (q[1] - 0.5 * gamma);
      d[2] = alpha0 * (q[2] - 0.5 * gamma);
      if ((d.array() <= 0.0).any())
        throw std::domain_error("ExpansionFamily: g2 gamma leaves the validity range");
      break;
    }
    case ExpansionKind::physical_gamma:
      throw std::domain_error("ExpansionFamily: the physical family varies the geometry, not delta");
  }
  return d;
}

void ExpansionFamily::validate() const {
  if (!(alpha0 > 0.0)) throw std::domain_error("ExpansionFamily: alpha0 must be > 0");
  if (std::fabs(q.sum() - 1.0) > 1e-12 || (q.array() <= 0.0).any())
    throw std::domain_error("ExpansionFamily: q must be a positive probability vector");
}

double score_g1(const Eigen::Ref<const Eigen::Vector3i>& y, double alpha0,
                const Eigen::Ref<const Eigen::Vector3d>& q, const TrineGeometry& geom,
                long n_post_draws, RngStream& rng) {
  const PosteriorLogTheta post = posterior_mean_log_theta(y, alpha0 * q, geom, n_post_draws, rng);
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += (alpha0 * q[k] - 0.5) * post.mean[k];
  return s;
}

double score_g2(const Eigen::Ref<const Eigen::Vector3i>& y, double alpha0,
                const Eigen::Ref<const Eigen::Vector3d>& q, const TrineGeometry& geom,
                long n_post_draws, RngStream& rng) {
  const PosteriorLogTheta post = posterior_mean_log_theta(y, alpha0 * q, geom, n_post_draws, rng);
  return post.mean[0] - 0.5 * (post.mean[1] + post.mean[2]);
}

namespace {

CheckResult family_check(bool g1, const Eigen::Ref<const Eigen::Vector3i>& y_obs, double alpha0,
                         const Eigen::Ref<const Eigen::Vector3d>& q, const TrineGeometry& geom,
                         long n_post_draws, McConfig cfg) {
  ExpansionFamily fam;
  fam.alpha0 = alpha0;
  fam.q = q;
  fam.validate();
  cfg.tail = g1 ? Tail::lower : Tail::upper;
  const long n_trials = y_obs.sum();
  const Eigen::Vector3d prior = alpha0 * q;

  auto stat = [&, g1](const Eigen::Vector3i& y, RngStream& rng) {
    return g1 ? score_g1(y, alpha0, q, geom, n_post_draws, rng)
              : score_g2(y, alpha0, q, geom, n_post_draws, rng);
  };
  auto sampler = [&](RngStream& rng) {
    const Eigen::Vector3d theta = sample_constrained_dirichlet_one(rng, prior, geom);
    return Eigen::Vector3i(sample_multinomial(rng, n_trials, theta));
  };
  return mc_p_value<Eigen::Vector3i>(stat, Eigen::Vector3i(y_obs), sampler, cfg);
}

}  // namespace

CheckResult g1_check(const Eigen::Ref<const Eigen::Vector3i>& y_obs, double alpha0,
                     const Eigen::Ref<const Eigen::Vector3d>& q, const TrineGeometry& geom,
                     long n_post_draws, McConfig cfg) {
  return family_check(true, y_obs, alpha0, q, geom, n_post_draws, cfg);
}

CheckResult g2_check(const Eigen::Ref<const Eigen::Vector3i>& y_obs, double alpha0,
                     const Eigen::Ref<const Eigen::Vector3d>& q, const TrineGeometry& geom,
                     long n_post_draws, McConfig cfg) {
  return family_check(false, y_obs, alpha0, q, geom, n_post_draws, cfg);
}

G1G2PowerStudy g1_g2_power_study(double alpha0, const Eigen::Ref<const Eigen::Vector3d>& q,
                                 const TrineGeometry& geom,
                                 const std::vector<double>& gamma_grid_g1,
                                 const std::vector<double>& gamma_grid_g2, long n_reps,
                                 long n_trials, long n_post_draws, const McConfig& cfg) {
  cfg.validate();
  if (n_reps < 1) throw std::domain_error("g1_g2_power_study: n_reps must be >= 1");
  if (n_trials < 1) throw std::domain_error("g1_g2_power_study: n_trials must be >= 1");
  const Eigen::Vector3d prior = alpha0 * q;
  const std::uint64_t base = cfg.stream_domain << 32;

  // Shared posterior-score evaluation on one data set.
  auto both_scores = [&](const Eigen::Vector3i& y, RngStream& rng, double& s1, double& s2) {
    const PosteriorLogTheta post = posterior_mean_log_theta(y, prior, geom, n_post_draws, rng);
    s1 = 0.0;
    for (int k = 0; k < 3; ++k) s1 += (alpha0 * q[k] - 0.5) * post.mean[k];
    s2 = post.mean[0] - 0.5 * (post.mean[1] + post.mean[2]);
  };

  // Reference under the baseline predictive.
  const long n_ref = cfg.n_draws;
  std::vector<double> ref_g1(static_cast<std::size_t>(n_ref));
  std::vector<double> ref_g2(static_cast<std::size_t>(n_ref));
  parallel_for_chunks(n_ref, cfg.n_workers, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      RngStream data_rng(cfg.base_seed, base + 2 * static_cast<std::uint64_t>(i));
      RngStream post_rng(cfg.base_seed, base + 2 * static_cast<std::uint64_t>(i) + 1);
      const Eigen::Vector3d theta = sample_constrained_dirichlet_one(data_rng, prior, geom);
      const Eigen::Vector3i y(sample_multinomial(data_rng, n_trials, theta));
      both_scores(y, post_rng, ref_g1[static_cast<std::size_t>(i)],
                  ref_g2[static_cast<std::size_t>(i)]);
    }
  });
  std::sort(ref_g1.begin(), ref_g1.end());
  std::sort(ref_g2.begin(), ref_g2.end());

  G1G2PowerStudy out;
  out.n_reps = n_reps;
  out.alpha = cfg.alpha;
  out.base_seed = cfg.base_seed;

  std::uint64_t stream_cursor = base + 2 * static_cast<std::uint64_t>(n_ref);
  for (int fam = 0; fam < 2; ++fam) {
    const bool data_from_g1 = (fam == 0);
    const std::vector<double>& grid = data_from_g1 ? gamma_grid_g1 : gamma_grid_g2;
    ExpansionFamily family;
    family.kind = data_from_g1 ? ExpansionKind::g1_jeffreys_mix : ExpansionKind::g2_location_shift;
    family.alpha0 = alpha0;
    family.q = q;
    family.validate();

    const long g = static_cast<long>(grid.size());
    std::vector<int> rej1(static_cast<std::size_t>(g * n_reps), 0);
    std::vector<int> rej2(static_cast<std::size_t>(g * n_reps), 0);
    const std::uint64_t fam_base = stream_cursor;
    parallel_for_chunks(g * n_reps, cfg.n_workers, [&](long lo, long hi) {
      for (long k = lo; k < hi; ++k) {
        const long i = k / n_reps;
        const Eigen::Vector3d delta = family.delta(grid[static_cast<std::size_t>(i)]);
        RngStream data_rng(cfg.base_seed, fam_base + 2 * static_cast<std::uint64_t>(k));
        RngStream post_rng(cfg.base_seed, fam_base + 2 * static_cast<std::uint64_t>(k) + 1);
        const Eigen::Vector3d theta = sample_constrained_dirichlet_one(data_rng, delta, geom);
        const Eigen::Vector3i y(sample_multinomial(data_rng, n_trials, theta));
        double s1, s2;
        both_scores(y, post_rng, s1, s2);
        rej1[static_cast<std::size_t>(k)] = (p_lower_sorted(ref_g1, s1) <= cfg.alpha) ? 1 : 0;
        rej2[static_cast<std::size_t>(k)] = (p_upper_sorted(ref_g2, s2) <= cfg.alpha) ? 1 : 0;
      }
    });
    stream_cursor += 2 * static_cast<std::uint64_t>(g * n_reps);

    FamilyPowerCurves curves;
    curves.gamma_grid = grid;
    curves.power_g1_check.resize(static_cast<std::size_t>(g));
    curves.power_g2_check.resize(static_cast<std::size_t>(g));
    for (long i = 0; i < g; ++i) {
      long h1 = 0, h2 = 0;
      for (long j = 0; j < n_reps; ++j) {
        h1 += rej1[static_cast<std::size_t>(i * n_reps + j)];
        h2 += rej2[static_cast<std::size_t>(i * n_reps + j)];
      }
      curves.power_g1_check[static_cast<std::size_t>(i)] =
          static_cast<double>(h1) / static_cast<double>(n_reps);
      curves.power_g2_check[static_cast<std::size_t>(i)] =
          static_cast<double>(h2) / static_cast<double>(n_reps);
    }
    (data_from_g1 ? out.under_g1 : out.under_g2) = std::move(curves);
  }
  return out;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, Eigen::ArrayXd& x, Eigen::ArrayXd& w) {
  x.resize(n);
  w.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

}  // namespace

DiskQuadrature::DiskQuadrature(int n_radial, int n_angular)
    : n_radial_(n_radial), n_angular_(n_angular) {
  if (n_radial < 2 || n_angular < 2)
    throw std::domain_error("DiskQuadrature: need at least 2 nodes per axis");
  Eigen::ArrayXd xr, wr, xa, wa;
  gauss_legendre(n_radial, xr, wr);
  gauss_legendre(n_angular, xa, wa);
  // r on [0, 1], phi on [0, 2 pi].
  const Eigen::ArrayXd r = 0.5 * (xr + 1.0);
  const Eigen::ArrayXd wr_m = 0.5 * wr;
  const Eigen::ArrayXd phi = M_PI * (xa + 1.0);
  const Eigen::ArrayXd wa_m = M_PI * wa;

  const int total = n_radial * n_angular;
  s1_.resize(total);
  s2_.resize(total);
  log_rw_.resize(total);
  int idx = 0;
  for (int i = 0; i < n_radial; ++i) {
    for (int j = 0; j < n_angular; ++j, ++idx) {
      s1_[idx] = r[i] * std::cos(phi[j]);
      s2_[idx] = r[i] * std::sin(phi[j]);
      log_rw_[idx] = std::log(r[i]) + std::log(wr_m[i]) + std::log(wa_m[j]);
    }
  }
}

ThetaLogGrid theta_log_grid(const TrineGeometry& geom, const DiskQuadrature& quad) {
  const double sg2 = geom.sin2();
  const double cg = geom.cos1();
  ThetaLogGrid g;
  const Eigen::ArrayXd& s1 = quad.s1();
  const Eigen::ArrayXd& s2 = quad.s2();
  constexpr double kTiny = 1e-300;
  g.l1 = (0.5 * sg2 * (1.0 + s1)).max(kTiny).log();
  g.l2 = (0.25 * (1.0 + cg * cg - s1 * sg2 + 2.0 * cg * s2)).max(kTiny).log();
  g.l3 = (0.25 * (1.0 + cg * cg - s1 * sg2 - 2.0 * cg * s2)).max(kTiny).log();
  return g;
}

namespace {

double log_disk_integral(const ThetaLogGrid& g, const DiskQuadrature& quad, double p1,
                         double p2, double p3) {
  Eigen::ArrayXd t = quad.log_rw();
  if (p1 != 0.0) t += p1 * g.l1;
  if (p2 != 0.0) t += p2 * g.l2;
  if (p3 != 0.0) t += p3 * g.l3;
  const double m = t.maxCoeff();
  return m + std::log((t - m).exp().sum());
}

}  // namespace

HIntegrals h_integrals(const Eigen::Ref<const Eigen::Vector3i>& y, double alpha,
                       const TrineGeometry& geom, const DiskQuadrature& quad) {
  if (!(alpha > 0.0)) throw std::domain_error("h_integrals: alpha must be > 0");
  if ((y.array() < 0).any()) throw std::domain_error("h_integrals: counts must be non-negative");
  const ThetaLogGrid g = theta_log_grid(geom, quad);
  HIntegrals out;
  out.log_h1 = log_disk_integral(g, quad, y[0] + alpha - 1.0, y[1] + alpha - 1.0,
                                 y[2] + alpha - 1.0);
  out.log_h2 = log_disk_integral(g, quad, alpha - 1.0, alpha - 1.0, alpha - 1.0);
  out.reduced_accuracy = alpha < 1.0 && (y.array() == 0).any();
  return out;
}

double physical_score(const Eigen::Ref<const Eigen::Vector3i>& y, double alpha,
                      const TrineGeometry& geom0, const DiskQuadrature& quad, double h) {
  if (!(h > 0.0)) throw std::domain_error("physical_score: h must be > 0");
  const HIntegrals up = h_integrals(y, alpha, TrineGeometry::from_angle(geom0.gamma + h), quad);
  const HIntegrals dn = h_integrals(y, alpha, TrineGeometry::from_angle(geom0.gamma - h), quad);
  return (up.log_h1 - dn.log_h1 - (up.log_h2 - dn.log_h2)) / (2.0 * h);
}

namespace {

// Precomputed node data for scoring many data sets at one baseline.
struct PhysicalScoreContext {
  DiskQuadrature quad;
  ThetaLogGrid up, dn;
  double am1;       // alpha - 1
  double dlog_h2;   // log H2(g0+h) - log H2(g0-h)
  double inv_2h;

  PhysicalScoreContext(double alpha, const TrineGeometry& geom0, int nr, int na, double h)
      : quad(nr, na),
        up(theta_log_grid(TrineGeometry::from_angle(geom0.gamma + h), quad)),
        dn(theta_log_grid(TrineGeometry::from_angle(geom0.gamma - h), quad)),
        am1(alpha - 1.0),
        inv_2h(1.0 / (2.0 * h)) {
    dlog_h2 = log_disk_integral(up, quad, am1, am1, am1) -
              log_disk_integral(dn, quad, am1, am1, am1);
  }

  double score(const Eigen::Vector3i& y) const {
    const double p1 = y[0] + am1, p2 = y[1] + am1, p3 = y[2] + am1;
    const double l_up = log_disk_integral(up, quad, p1, p2, p3);
    const double l_dn = log_disk_integral(dn, quad, p1, p2, p3);
    return (l_up - l_dn - dlog_h2) * inv_2h;
  }
};

}  // namespace

CheckResult physical_check(const Eigen::Ref<const Eigen::Vector3i>& y_obs, double alpha,
                           const TrineGeometry& geom0, McConfig cfg, int n_radial,
                           int n_angular, double h) {
  if ((y_obs.array() < 0).any())
    throw std::domain_error("physical_check: counts must be non-negative");
  const PhysicalScoreContext ctx(alpha, geom0, n_radial, n_angular, h);
  const long n_trials = y_obs.sum();
  const Eigen::Vector3d prior = Eigen::Vector3d::Constant(alpha);

  auto stat = [&ctx](const Eigen::Vector3i& y) { return ctx.score(y); };
  auto sampler = [&](RngStream& rng) {
    const Eigen::Vector3d theta = sample_constrained_dirichlet_one(rng, prior, geom0);
    return Eigen::Vector3i(sample_multinomial(rng, n_trials, theta));
  };
  return mc_p_value<Eigen::Vector3i>(stat, Eigen::Vector3i(y_obs), sampler, cfg);
}

PowerCurve physical_power_curve(double alpha, const TrineGeometry& geom0,
                                const std::vector<double>& gamma_grid, long n_reps,
                                long n_trials, bool upper_tail, const McConfig& cfg,
                                int n_radial, int n_angular, double h) {
  cfg.validate();
  const PhysicalScoreContext ctx(alpha, geom0, n_radial, n_angular, h);
  const Eigen::Vector3d prior = Eigen::Vector3d::Constant(alpha);
  const std::uint64_t base = cfg.stream_domain << 32;

  // Reference under the baseline geometry, shared across the grid.
  std::vector<double> ref(static_cast<std::size_t>(cfg.n_draws));
  parallel_for_chunks(cfg.n_draws, cfg.n_workers, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      RngStream rng(cfg.base_seed, base + static_cast<std::uint64_t>(i));
      const Eigen::Vector3d theta = sample_constrained_dirichlet_one(rng, prior, geom0);
      const Eigen::Vector3i y(sample_multinomial(rng, n_trials, theta));
      ref[static_cast<std::size_t>(i)] = ctx.score(y);
    }
  });
  std::sort(ref.begin(), ref.end());

  const long g = static_cast<long>(gamma_grid.size());
  std::vector<int> rej(static_cast<std::size_t>(g * n_reps), 0);
  const std::uint64_t rep_base = base + static_cast<std::uint64_t>(cfg.n_draws);
  parallel_for_chunks(g * n_reps, cfg.n_workers, [&](long lo, long hi) {
    for (long k = lo; k < hi; ++k) {
      const long i = k / n_reps;
      const TrineGeometry true_geom =
          TrineGeometry::from_angle(gamma_grid[static_cast<std::size_t>(i)]);
      RngStream rng(cfg.base_seed, rep_base + static_cast<std::uint64_t>(k));
      const Eigen::Vector3d theta = sample_constrained_dirichlet_one(rng, prior, true_geom);
      const Eigen::Vector3i y(sample_multinomial(rng, n_trials, theta));
      const double s = ctx.score(y);
      const double p = upper_tail ? p_upper_sorted(ref, s) : p_lower_sorted(ref, s);
      rej[static_cast<std::size_t>(k)] = (p <= cfg.alpha) ? 1 : 0;
    }
  });

  PowerCurve out;
  out.gamma_grid = gamma_grid;
  out.power.resize(static_cast<std::size_t>(g));
  for (long i = 0; i < g; ++i) {
    long hits = 0;
    for (long j = 0; j < n_reps; ++j)
      hits += rej[static_cast<std::size_t>(i * n_reps + j)];
    out.power[static_cast<std::size_t>(i)] =
        static_cast<double>(hits) / static_cast<double>(n_reps);
  }
  out.n_reps = n_reps;
  out.alpha = cfg.alpha;
  out.base_seed = cfg.base_seed;
  return out;
}

}  // namespace quantum
}  // namespace priorcheck
