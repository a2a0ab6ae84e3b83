// Command-line front end: conflict checks, power studies, and
// one-command reproduction targets. Results go to stdout (or --out);
// progress goes to stderr.
#include <CLI11.hpp>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "priorcheck/io.hpp"
#include "priorcheck/lasso.hpp"
#include "priorcheck/models.hpp"
#include "priorcheck/quantum.hpp"

using namespace priorcheck;

namespace {

struct CommonOpts {
  std::uint64_t seed = kDefaultBaseSeed;
  long draws = 10000;
  long reps = 500;
  int workers = 1;
  double alpha = 0.05;
  std::string out;
  std::string format;
  std::string tail = "";

  McConfig mc(Tail default_tail) const {
    McConfig cfg;
    cfg.n_draws = draws;
    cfg.n_workers = workers;
    cfg.base_seed = seed;
    cfg.alpha = alpha;
    cfg.tail = tail.empty() ? default_tail : tail_from_string(tail);
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_tail = false) {
  cmd->add_option("--seed", o.seed, "base seed for every stream");
  cmd->add_option("--draws", o.draws, "Monte-Carlo reference draws");
  cmd->add_option("--reps", o.reps, "replicates per grid point");
  cmd->add_option("--workers", o.workers, "worker threads")->envname("PRIORCHECK_WORKERS");
  cmd->add_option("--alpha", o.alpha, "significance level");
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--format", o.format, "csv or json where both apply");
  if (with_tail) cmd->add_option("--tail", o.tail, "upper, lower or two_sided");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot open output path: " + o.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

Eigen::Vector3i to_counts(const std::vector<int>& v) {
  if (v.size() != 3) throw std::domain_error("counts: expected exactly three values");
  return Eigen::Vector3i(v[0], v[1], v[2]);
}

Eigen::VectorXd to_reals(std::vector<double> v) {
  if (v.empty()) throw std::domain_error("data: expected comma-separated numbers");
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// ---- reproduce targets -------------------------------------------------

void reproduce_example1(const CommonOpts& o) {
  NormalLocationModel m{0.0, 1.0, 1.0};
  const double y = 2.5;
  const auto r = normal_mc_check(m, y, o.mc(Tail::upper));
  nlohmann::ordered_json j;
  j["closed_form_p"] = normal_p_value(m, y);
  j["mc"] = nlohmann::ordered_json::parse(check_result_json(r));
  emit(o, j.dump(2));
}

void reproduce_fig1(const CommonOpts& o) {
  lasso::ManyMeansSetup setup{10, 20, 1.0, 1.0};
  McConfig cfg = o.mc(Tail::two_sided);
  std::cerr << "simulating " << cfg.n_draws << " reference draws of the score statistic\n";
  const auto [lo, hi] = lasso::critical_values(lasso::LassoStat::score, setup, cfg);
  std::vector<double> stats(static_cast<std::size_t>(cfg.n_draws));
  parallel_for_chunks(cfg.n_draws, cfg.n_workers, [&](long a, long b) {
    for (long i = a; i < b; ++i) {
      RngStream rng(cfg.base_seed, static_cast<std::uint64_t>(i));
      Eigen::VectorXd mu = sample_exp_power(rng, setup.tau, setup.q0, setup.n);
      const double sd = 1.0 / std::sqrt(static_cast<double>(setup.m));
      for (Eigen::Index k = 0; k < mu.size(); ++k) mu[k] += sd * rng.normal();
      stats[static_cast<std::size_t>(i)] =
          lasso::approx_score_stat(mu, setup.tau) + lasso::kScoreReportOffset;
    }
  });
  const auto [mn_it, mx_it] = std::minmax_element(stats.begin(), stats.end());
  const double mn = *mn_it, mx = *mx_it;
  const int bins = 60;
  std::vector<long> counts(bins, 0);
  for (double s : stats) {
    int b = static_cast<int>((s - mn) / (mx - mn) * bins);
    if (b >= bins) b = bins - 1;
    if (b < 0) b = 0;
    ++counts[static_cast<std::size_t>(b)];
  }
  std::ostringstream os;
  os << "bin_lo,bin_hi,density,crit_lo,crit_hi\n";
  const double width = (mx - mn) / bins;
  for (int b = 0; b < bins; ++b) {
    const double density = static_cast<double>(counts[static_cast<std::size_t>(b)]) /
                           (static_cast<double>(cfg.n_draws) * width);
    os << mn + b * width << ',' << mn + (b + 1) * width << ',' << density << ',' << lo << ','
       << hi << '\n';
  }
  emit(o, os.str());
}

void reproduce_crit_table(const CommonOpts& o) {
  McConfig cfg = o.mc(Tail::two_sided);
  std::ostringstream os;
  os << "stat,n,m,tau,crit_lo,crit_hi,draws,seed\n";
  int domain = 0;
  for (long n : {10L, 100L}) {
    lasso::ManyMeansSetup setup{n, 20, 1.0, 1.0};
    for (auto stat : {lasso::LassoStat::kurtosis, lasso::LassoStat::score}) {
      McConfig c = cfg;
      c.stream_domain = static_cast<std::uint64_t>(domain++);
      std::cerr << "critical values: n=" << n << " stat="
                << (stat == lasso::LassoStat::kurtosis ? "kurtosis" : "score") << "\n";
      const auto [lo, hi] = lasso::critical_values(stat, setup, c);
      os << (stat == lasso::LassoStat::kurtosis ? "kurtosis" : "score") << ',' << n << ",20,1,"
         << lo << ',' << hi << ',' << c.n_draws << ',' << c.base_seed << '\n';
    }
  }
  emit(o, os.str());
}

void reproduce_fig2(const CommonOpts& o) {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.1 * i);
  std::ostringstream os;
  bool first = true;
  for (long n : {10L, 100L}) {
    lasso::ManyMeansSetup setup{n, 20, 1.0, 1.0};
    McConfig cfg = o.mc(Tail::two_sided);
    cfg.stream_domain = (n == 10) ? 0 : 1;
    std::cerr << "many-means power, n=" << n << " (" << o.reps << " reps per q)\n";
    const auto pp = lasso::many_means_power_both(setup, grid, o.reps, cfg);
    std::ostringstream part;
    write_lasso_power_csv(part, pp, n, 0, setup.m, setup.tau);
    std::string text = part.str();
    if (!first) text = text.substr(text.find('\n') + 1);  // drop repeated header
    os << text;
    first = false;
  }
  emit(o, os.str());
}

void reproduce_fig3(const CommonOpts& o) {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.1 * i);
  std::ostringstream os;
  bool first = true;
  int domain = 0;
  for (long n : {25L, 50L, 100L, 200L}) {
    for (long p : {25L, 50L, 75L, 100L}) {
      lasso::RegressionSetup setup{n, p, 1.0, 1.0};
      McConfig cfg = o.mc(Tail::two_sided);
      cfg.stream_domain = static_cast<std::uint64_t>(domain++);
      std::cerr << "regression power, n=" << n << " p=" << p << "\n";
      const auto pp = lasso::regression_power_study(setup, grid, o.reps, cfg);
      std::ostringstream part;
      write_lasso_power_csv(part, pp, n, p, 0, setup.tau);
      std::string text = part.str();
      if (!first) text = text.substr(text.find('\n') + 1);
      os << text;
      first = false;
    }
  }
  emit(o, os.str());
}

void reproduce_fig4(const CommonOpts& o, long n_trials, long post_draws) {
  const Eigen::Vector3d q = Eigen::Vector3d::Constant(1.0 / 3.0);
  const auto geom = quantum::TrineGeometry::from_cos2(quantum::kIdealCos2);
  std::vector<double> grid_g1, grid_g2;
  for (int i = 0; i <= 20; ++i) grid_g1.push_back(i / 20.0);
  for (int i = 0; i <= 20; ++i) grid_g2.push_back(i / 60.0);
  McConfig cfg = o.mc(Tail::upper);
  std::cerr << "g1/g2 power study: N=" << n_trials << ", " << o.reps
            << " reps per grid point\n";
  const auto study = quantum::g1_g2_power_study(30.0, q, geom, grid_g1, grid_g2, o.reps,
                                                n_trials, post_draws, cfg);
  std::ostringstream os;
  os << "family,gamma,power_g1_check,power_g2_check,n_reps,alpha,seed\n";
  for (std::size_t i = 0; i < study.under_g1.gamma_grid.size(); ++i)
    os << "g1," << study.under_g1.gamma_grid[i] << ',' << study.under_g1.power_g1_check[i]
       << ',' << study.under_g1.power_g2_check[i] << ',' << study.n_reps << ',' << study.alpha
       << ',' << study.base_seed << '\n';
  for (std::size_t i = 0; i < study.under_g2.gamma_grid.size(); ++i)
    os << "g2," << study.under_g2.gamma_grid[i] << ',' << study.under_g2.power_g1_check[i]
       << ',' << study.under_g2.power_g2_check[i] << ',' << study.n_reps << ',' << study.alpha
       << ',' << study.base_seed << '\n';
  emit(o, os.str());
}

void reproduce_power_flat(const CommonOpts& o, long n_trials) {
  const auto geom0 = quantum::TrineGeometry::from_cos2(quantum::kIdealCos2);
  std::vector<double> grid;
  for (int i = -10; i <= 10; ++i) grid.push_back(geom0.gamma + 0.03 * i);
  std::ostringstream os;
  os << "direction,gamma,power,n_reps,alpha,seed\n";
  for (bool up : {true, false}) {
    McConfig cfg = o.mc(Tail::upper);
    cfg.stream_domain = up ? 0 : 1;
    std::cerr << "physical-check power, " << (up ? "increasing" : "decreasing")
              << "-gamma direction\n";
    const auto pc = quantum::physical_power_curve(1.0, geom0, grid, o.reps, n_trials, up, cfg);
    for (std::size_t i = 0; i < pc.gamma_grid.size(); ++i)
      os << (up ? "increasing" : "decreasing") << ',' << pc.gamma_grid[i] << ',' << pc.power[i]
         << ',' << pc.n_reps << ',' << pc.alpha << ',' << pc.base_seed << '\n';
  }
  emit(o, os.str());
}

void reproduce_quantum_experiment(const CommonOpts& o, long big_draws, long small_draws) {
  const Eigen::Vector3i y(180, 31, 30);
  nlohmann::ordered_json j;
  {
    McConfig cfg = o.mc(Tail::upper);
    cfg.n_draws = big_draws;
    std::cerr << "ideal-trine prior, " << cfg.n_draws << " reference draws\n";
    const auto r = quantum::physical_check(
        y, 1.0, quantum::TrineGeometry::from_cos2(quantum::kIdealCos2), cfg);
    j["ideal_trine"] = nlohmann::ordered_json::parse(check_result_json(r));
    j["ideal_trine"]["min_one_sided_p"] = std::min(r.p_upper, r.p_lower);
  }
  {
    McConfig cfg = o.mc(Tail::upper);
    cfg.n_draws = small_draws;
    std::cerr << "matched geometry (cos^2 gamma = 0.1327), " << cfg.n_draws
              << " reference draws\n";
    const auto r =
        quantum::physical_check(y, 1.0, quantum::TrineGeometry::from_cos2(0.1327), cfg);
    j["matched_geometry"] = nlohmann::ordered_json::parse(check_result_json(r));
  }
  emit(o, j.dump(2));
}

const std::map<std::string, std::string> kDescriptions = {
    {"example1",
     "Normal-location conflict check at y=2.5, mu0=0, tau0^2=sigma^2=1: the Monte-Carlo "
     "p-value matches the closed form 2(1-Phi(2.5/sqrt(2))) = 0.0771 within about 0.004 at "
     "1e5 draws. Deterministic for a fixed --seed."},
    {"fig1",
     "Null density histogram of the approximate score statistic (n=10, m=20, tau=1) with "
     "2.5%/97.5% critical values on the published scale; expect (0.408, 1.117) within 0.02 "
     "at 1e5 draws."},
    {"crit-table",
     "Critical values of the n-scaled kurtosis and the score statistic at n=10 and n=100 "
     "(m=20, tau=1). Expected at 1e5 draws: kurtosis n=10 (1.65, 6.72) +- 0.05, score n=10 "
     "(0.408, 1.117) +- 0.02, score n=100 (0.670, 0.898) +- 0.015; kurtosis n=100 converges "
     "to (3.09, 10.11)."},
    {"fig2",
     "Many-means power of the kurtosis and score checks over q in 0.1..2 for n=10 and "
     "n=100 (m=20, tau=1), two-sided level 0.05. Size is 0.05 at q=1; both curves are "
     "U-shaped in q."},
    {"fig3",
     "Regression power study over q in 0.1..2 for n in {25,50,100,200} x p in "
     "{25,50,75,100}. The score check dominates for p < n; the kurtosis check holds up "
     "for p > n. Desk-scale defaults: 200 replicates, 2000 reference draws."},
    {"fig4",
     "Power of the g1 (Jeffreys-mixture) and g2 (location-shift) checks when data are "
     "simulated under each family's predictive (alpha0=30, q uniform, N=50 by default). "
     "The data-generating family's own check dominates at large gamma."},
    {"power-flat",
     "Power of the two one-sided physical-constraint checks around the ideal trine "
     "(flat prior, N=50): each direction is sensitive to its own sign of the distortion "
     "and has size 0.05 at the baseline."},
    {"quantum-experiment",
     "Physical-constraint checks of y=(180,31,30): the ideal-trine prior puts the "
     "minimum one-sided p at the Monte-Carlo resolution floor (conflict), the matched "
     "cos^2 gamma = 0.1327 prior does not. The null score distribution concentrates at "
     "the interior-data limit tan(g0)-2cot(g0), so the no-conflict p-value is "
     "tie-sensitive; the ranks here are resolved exactly and p_upper comes out near "
     "0.09."},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"score-based prior-data conflict checks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file with [section] headers");
  app.allow_config_extras(CLI::config_extras_mode::ignore_all);

  // ---- check ----
  auto* check = app.add_subcommand("check", "closed-form model checks");
  check->require_subcommand(1);

  CommonOpts normal_o;
  normal_o.draws = 100000;
  NormalLocationModel normal_m;
  double normal_y = 0.0;
  auto* normal = check->add_subcommand("normal", "normal location model");
  normal->add_option("--mu0", normal_m.mu0, "prior mean");
  normal->add_option("--tau0sq", normal_m.tau0_sq, "prior variance");
  normal->add_option("--sigmasq", normal_m.sigma_sq, "sampling variance");
  normal->add_option("--y", normal_y, "observed value")->required();
  add_common(normal, normal_o);

  CommonOpts binom_o;
  BinomialBetaModel binom_m;
  long binom_y = 0;
  std::string binom_target = "jeffreys";
  auto* binom = check->add_subcommand("binomial", "binomial with a beta prior");
  binom->add_option("--n", binom_m.n, "trials")->required();
  binom->add_option("--a", binom_m.a, "beta prior a");
  binom->add_option("--b", binom_m.b, "beta prior b");
  binom->add_option("--y", binom_y, "observed successes")->required();
  binom->add_option("--target", binom_target, "jeffreys or uniform mixture target");
  add_common(binom, binom_o, true);

  CommonOpts nig_o;
  NigModel nig_m;
  std::vector<double> nig_data;
  auto* nig = check->add_subcommand("nig", "normal-inverse-gamma hierarchical model");
  nig->add_option("--mu0", nig_m.mu0, "conditional prior mean");
  nig->add_option("--lambda0", nig_m.lambda0, "prior precision factor");
  nig->add_option("--a", nig_m.a, "inverse-gamma a");
  nig->add_option("--b", nig_m.b, "inverse-gamma b");
  nig->add_option("--data", nig_data, "comma-separated observations")->required()->delimiter(',');
  add_common(nig, nig_o);

  // ---- lasso ----
  auto* las = app.add_subcommand("lasso", "exponential-power expansion checks");
  las->require_subcommand(1);

  CommonOpts crit_o;
  crit_o.draws = 100000;
  lasso::ManyMeansSetup crit_setup;
  std::string crit_stat = "both";
  auto* crit = las->add_subcommand("means-crit", "prior-calibrated critical values");
  crit->add_option("--stat", crit_stat, "kurtosis, score or both");
  crit->add_option("--n", crit_setup.n, "number of means");
  crit->add_option("--m", crit_setup.m, "replicates per mean");
  crit->add_option("--tau", crit_setup.tau, "prior scale");
  add_common(crit, crit_o);

  CommonOpts mpow_o;
  lasso::ManyMeansSetup mpow_setup;
  std::vector<double> mpow_grid{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
  auto* mpow = las->add_subcommand("means-power", "many-means power study");
  mpow->add_option("--n", mpow_setup.n, "number of means");
  mpow->add_option("--m", mpow_setup.m, "replicates per mean");
  mpow->add_option("--tau", mpow_setup.tau, "prior scale");
  mpow->add_option("--q-grid", mpow_grid, "comma-separated true shapes")->delimiter(',');
  add_common(mpow, mpow_o);

  CommonOpts rpow_o;
  rpow_o.draws = 2000;
  rpow_o.reps = 200;
  lasso::RegressionSetup rpow_setup;
  std::vector<double> rpow_grid{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
  auto* rpow = las->add_subcommand("reg-power", "regression power study");
  rpow->add_option("--n", rpow_setup.n, "rows");
  rpow->add_option("--p", rpow_setup.p, "predictors");
  rpow->add_option("--tau", rpow_setup.tau, "prior scale");
  rpow->add_flag("--standardize,!--raw-design", rpow_setup.standardize,
                 "center and unit-scale the design columns (default on)");
  rpow->add_option("--q-grid", rpow_grid, "comma-separated true shapes")->delimiter(',');
  add_common(rpow, rpow_o);

  // ---- quantum ----
  auto* qu = app.add_subcommand("quantum", "constrained-multinomial trine checks");
  qu->require_subcommand(1);

  CommonOpts g_o;
  std::vector<int> g_counts{180, 31, 30};
  double g_alpha0 = 30.0;
  std::vector<double> g_q;
  double g_cos2 = quantum::kIdealCos2;
  long g_post = 10000;
  auto* g1c = qu->add_subcommand("g1", "Jeffreys-mixture expansion check");
  auto* g2c = qu->add_subcommand("g2", "location-shift expansion check");
  for (CLI::App* c : {g1c, g2c}) {
    c->add_option("--counts", g_counts, "observed counts n1,n2,n3")->delimiter(',');
    c->add_option("--alpha0", g_alpha0, "prior precision");
    c->add_option("--q", g_q, "prior location q1,q2,q3 (default uniform)")->delimiter(',');
    c->add_option("--cos2gamma", g_cos2, "squared cosine of the trine angle");
    c->add_option("--post-draws", g_post, "accepted posterior draws per statistic");
    add_common(c, g_o, true);
  }

  CommonOpts ph_o;
  std::vector<int> ph_counts{180, 31, 30};
  double ph_alpha = 1.0;
  double ph_cos2 = quantum::kIdealCos2;
  int ph_nr = quantum::kDefaultRadialNodes;
  int ph_na = quantum::kDefaultAngularNodes;
  double ph_h = quantum::kDefaultFdStep;
  auto* ph = qu->add_subcommand("physical", "physical-constraint expansion check");
  ph->add_option("--counts", ph_counts, "observed counts n1,n2,n3")->delimiter(',');
  ph->add_option("--prior-alpha", ph_alpha, "Dirichlet exponent of the prior over the constraint set");
  ph->add_option("--cos2gamma0", ph_cos2, "baseline squared cosine");
  ph->add_option("--radial-nodes", ph_nr, "radial quadrature nodes");
  ph->add_option("--angular-nodes", ph_na, "angular quadrature nodes");
  ph->add_option("--fd-step", ph_h, "finite-difference step in radians");
  add_common(ph, ph_o, true);

  CommonOpts qp_o;
  qp_o.reps = 200;
  std::string qp_family = "physical-up";
  double qp_cos2 = quantum::kIdealCos2;
  long qp_trials = 50;
  double qp_alpha0 = 30.0;
  long qp_post = 10000;
  std::vector<double> qp_grid;
  auto* qp = qu->add_subcommand("power", "power curve of one quantum check");
  qp->add_option("--family", qp_family,
                 "physical-up, physical-down, g1-under-g1, g2-under-g1, g1-under-g2, "
                 "g2-under-g2");
  qp->add_option("--cos2gamma0", qp_cos2, "baseline squared cosine");
  qp->add_option("--trials", qp_trials, "multinomial trials per data set");
  qp->add_option("--alpha0", qp_alpha0, "prior precision for g1/g2");
  qp->add_option("--post-draws", qp_post, "accepted posterior draws per statistic");
  qp->add_option("--grid", qp_grid, "comma-separated expansion values")->delimiter(',');
  add_common(qp, qp_o);

  // ---- reproduce ----
  CommonOpts rep_o;
  std::string rep_target;
  bool rep_describe = false;
  long rep_trials = 50;
  long rep_post = 10000;
  long rep_big_draws = 200000;
  long rep_small_draws = 10000;
  auto* rep = app.add_subcommand("reproduce", "one-command reproduction targets");
  rep->add_option("target", rep_target,
                  "example1, fig1, crit-table, fig2, fig3, fig4, power-flat, "
                  "quantum-experiment")
      ->required();
  rep->add_flag("--describe", rep_describe, "print what the target does and expected output");
  rep->add_option("--trials", rep_trials, "multinomial trials (fig4, power-flat)");
  rep->add_option("--post-draws", rep_post, "accepted posterior draws (fig4)");
  rep->add_option("--big-draws", rep_big_draws, "reference draws for the conflict case");
  rep->add_option("--small-draws", rep_small_draws, "reference draws for the matched case");
  add_common(rep, rep_o);

  // let --config (and any parent option) be given after a subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands({})) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help or --version
    app.exit(e);
    return 2;
  }

  try {
    if (normal->parsed()) {
      const auto r = normal_mc_check(normal_m, normal_y, normal_o.mc(Tail::upper));
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(check_result_json(r));
      j["closed_form_p"] = normal_p_value(normal_m, normal_y);
      emit(normal_o, j.dump(2));
    } else if (binom->parsed()) {
      if (binom_target != "uniform" && binom_target != "jeffreys")
        throw std::domain_error("target: must be jeffreys or uniform");
      binom_m.target =
          (binom_target == "uniform") ? MixtureTarget::uniform : MixtureTarget::jeffreys;
      binom_m.validate();
      McConfig cfg = binom_o.mc(Tail::two_sided);
      auto stat = [&](const long& y) { return binomial_score_exact(binom_m, y); };
      auto sampler = [&](RngStream& rng) {
        const double theta = rng.beta(binom_m.a, binom_m.b);
        return rng.binomial(binom_m.n, theta);
      };
      const auto r = mc_p_value<long>(stat, binom_y, sampler, cfg);
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(check_result_json(r));
      j["score_exact"] = binomial_score_exact(binom_m, binom_y);
      j["score_asymptotic"] = binomial_score_asymptotic(binom_m, binom_y);
      emit(binom_o, j.dump(2));
    } else if (nig->parsed()) {
      const Eigen::VectorXd data = to_reals(nig_data);
      const auto r = nig_s1_check(nig_m, data, nig_o.mc(Tail::upper));
      emit(nig_o, check_result_json(r));
    } else if (crit->parsed()) {
      McConfig cfg = crit_o.mc(Tail::two_sided);
      nlohmann::ordered_json j;
      if (crit_stat == "kurtosis" || crit_stat == "both") {
        const auto [lo, hi] =
            lasso::critical_values(lasso::LassoStat::kurtosis, crit_setup, cfg);
        j["kurtosis"] = {lo, hi};
      }
      if (crit_stat == "score" || crit_stat == "both") {
        McConfig c2 = cfg;
        c2.stream_domain = 1;
        const auto [lo, hi] = lasso::critical_values(lasso::LassoStat::score, crit_setup, c2);
        j["score"] = {lo, hi};
      }
      if (j.empty()) throw std::domain_error("stat: must be kurtosis, score or both");
      j["n"] = crit_setup.n;
      j["m"] = crit_setup.m;
      j["tau"] = crit_setup.tau;
      j["draws"] = cfg.n_draws;
      j["seed"] = cfg.base_seed;
      emit(crit_o, j.dump(2));
    } else if (mpow->parsed()) {
      const auto pp = lasso::many_means_power_both(mpow_setup, mpow_grid, mpow_o.reps,
                                                   mpow_o.mc(Tail::two_sided));
      std::ostringstream os;
      write_lasso_power_csv(os, pp, mpow_setup.n, 0, mpow_setup.m, mpow_setup.tau);
      emit(mpow_o, os.str());
    } else if (rpow->parsed()) {
      const auto pp = lasso::regression_power_study(rpow_setup, rpow_grid, rpow_o.reps,
                                                    rpow_o.mc(Tail::two_sided));
      std::ostringstream os;
      write_lasso_power_csv(os, pp, rpow_setup.n, rpow_setup.p, 0, rpow_setup.tau);
      emit(rpow_o, os.str());
    } else if (g1c->parsed() || g2c->parsed()) {
      const Eigen::Vector3i y = to_counts(g_counts);
      Eigen::Vector3d q = Eigen::Vector3d::Constant(1.0 / 3.0);
      if (!g_q.empty()) {
        if (g_q.size() != 3) throw std::domain_error("q: expected three values");
        q = Eigen::Vector3d(g_q[0], g_q[1], g_q[2]);
      }
      const auto geom = quantum::TrineGeometry::from_cos2(g_cos2);
      const McConfig cfg = g_o.mc(g1c->parsed() ? Tail::lower : Tail::upper);
      const auto r = g1c->parsed() ? quantum::g1_check(y, g_alpha0, q, geom, g_post, cfg)
                                   : quantum::g2_check(y, g_alpha0, q, geom, g_post, cfg);
      emit(g_o, check_result_json(r));
    } else if (ph->parsed()) {
      const auto r = quantum::physical_check(to_counts(ph_counts), ph_alpha,
                                             quantum::TrineGeometry::from_cos2(ph_cos2),
                                             ph_o.mc(Tail::upper), ph_nr, ph_na, ph_h);
      emit(ph_o, check_result_json(r));
    } else if (qp->parsed()) {
      const auto geom0 = quantum::TrineGeometry::from_cos2(qp_cos2);
      std::vector<double> grid = qp_grid;
      if (qp_family == "physical-up" || qp_family == "physical-down") {
        if (grid.empty())
          for (int i = -10; i <= 10; ++i) grid.push_back(geom0.gamma + 0.03 * i);
        const auto pc =
            quantum::physical_power_curve(1.0, geom0, grid, qp_o.reps, qp_trials,
                                          qp_family == "physical-up", qp_o.mc(Tail::upper));
        std::ostringstream os;
        write_power_curve_csv(os, pc);
        emit(qp_o, os.str());
      } else if (qp_family == "g1-under-g1" || qp_family == "g2-under-g1" ||
                 qp_family == "g1-under-g2" || qp_family == "g2-under-g2") {
        std::vector<double> grid_g1, grid_g2;
        for (int i = 0; i <= 20; ++i) grid_g1.push_back(i / 20.0);
        for (int i = 0; i <= 20; ++i) grid_g2.push_back(i / 60.0);
        if (!grid.empty()) {
          if (qp_family.ends_with("under-g1"))
            grid_g1 = grid;
          else
            grid_g2 = grid;
        }
        const Eigen::Vector3d q = Eigen::Vector3d::Constant(1.0 / 3.0);
        const auto study =
            quantum::g1_g2_power_study(qp_alpha0, q, geom0, grid_g1, grid_g2, qp_o.reps,
                                       qp_trials, qp_post, qp_o.mc(Tail::upper));
        const auto& fam = qp_family.ends_with("under-g1") ? study.under_g1 : study.under_g2;
        PowerCurve pc;
        pc.gamma_grid = fam.gamma_grid;
        pc.power = qp_family.starts_with("g1") ? fam.power_g1_check : fam.power_g2_check;
        pc.n_reps = study.n_reps;
        pc.alpha = study.alpha;
        pc.base_seed = study.base_seed;
        std::ostringstream os;
        write_power_curve_csv(os, pc);
        emit(qp_o, os.str());
      } else {
        throw std::domain_error("family: unknown value " + qp_family);
      }
    } else if (rep->parsed()) {
      if (rep_describe) {
        const auto it = kDescriptions.find(rep_target);
        if (it == kDescriptions.end())
          throw std::domain_error("target: unknown value " + rep_target);
        emit(rep_o, it->second);
        return 0;
      }
      if (rep_target == "example1") {
        CommonOpts o = rep_o;
        if (rep->count("--draws") == 0) o.draws = 100000;
        reproduce_example1(o);
      } else if (rep_target == "fig1") {
        CommonOpts o = rep_o;
        if (rep->count("--draws") == 0) o.draws = 100000;
        reproduce_fig1(o);
      } else if (rep_target == "crit-table") {
        CommonOpts o = rep_o;
        if (rep->count("--draws") == 0) o.draws = 100000;
        reproduce_crit_table(o);
      } else if (rep_target == "fig2") {
        reproduce_fig2(rep_o);
      } else if (rep_target == "fig3") {
        CommonOpts o = rep_o;
        if (rep->count("--reps") == 0) o.reps = 200;
        if (rep->count("--draws") == 0) o.draws = 2000;
        reproduce_fig3(o);
      } else if (rep_target == "fig4") {
        CommonOpts o = rep_o;
        if (rep->count("--reps") == 0) o.reps = 200;
        if (rep->count("--draws") == 0) o.draws = 4000;
        reproduce_fig4(o, rep_trials, rep_post);
      } else if (rep_target == "power-flat") {
        CommonOpts o = rep_o;
        if (rep->count("--reps") == 0) o.reps = 200;
        reproduce_power_flat(o, rep_trials);
      } else if (rep_target == "quantum-experiment") {
        reproduce_quantum_experiment(rep_o, rep_big_draws, rep_small_draws);
      } else {
        throw std::domain_error("target: unknown value " + rep_target);
      }
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
