#pragma once

#include <Eigen/Core>
#include <vector>

#include "priorcheck/mc.hpp"

namespace priorcheck {
namespace quantum {

// Constrained Dirichlet priors for a three-outcome qubit measurement with
// a symmetrically distorted trine geometry. Probabilities live on the
// image of the unit (s1, s2) disk under an affine map indexed by the
// distortion angle gamma; the physical constraint set moves with gamma.

struct TrineGeometry {
  double gamma;  // distortion angle, radians; ideal trine at cos^2 = 1/3

  static TrineGeometry from_angle(double g);
  static TrineGeometry from_cos2(double cos2);

  double sin2() const;
  double cos1() const;
};

inline constexpr double kIdealCos2 = 1.0 / 3.0;

// The affine map of the distorted trine:
//   theta1 = (1/2) sin^2(g) (1 + s1)
//   theta2,3 = (1/4)[1 + cos^2(g) - s1 sin^2(g) +- 2 s2 cos(g)].
// Components sum to 1 for every (s1, s2); points outside the closed unit
// disk are a domain error.
Eigen::Vector3d theta_from_disk(const TrineGeometry& geom, double s1, double s2);

// Inverse of theta_from_disk on the simplex:
//   s1 = 2 theta1 / sin^2(g) - 1, s2 = (theta2 - theta3) / cos(g).
Eigen::Vector2d disk_from_theta(const TrineGeometry& geom,
                                const Eigen::Ref<const Eigen::Vector3d>& theta);

// Membership in Theta_gamma: (2 theta1/sin^2 g - 1)^2
// + ((theta2-theta3)/cos g)^2 <= 1, with a 1e-12 rounding allowance so
// that mapped boundary points stay inside.
bool constraint_satisfied(const TrineGeometry& geom,
                          const Eigen::Ref<const Eigen::Vector3d>& theta);

// Exact draws from the Dirichlet(alpha) density truncated to Theta_gamma,
// by rejection from the unconstrained Dirichlet. Throws if a 1e5-proposal
// pilot sees acceptance below 1e-4.
Eigen::MatrixX3d sample_constrained_dirichlet(RngStream& rng,
                                              const Eigen::Ref<const Eigen::Vector3d>& alpha,
                                              const TrineGeometry& geom, long n);

// Single draw, same rejection scheme.
Eigen::Vector3d sample_constrained_dirichlet_one(RngStream& rng,
                                                 const Eigen::Ref<const Eigen::Vector3d>& alpha,
                                                 const TrineGeometry& geom);

// Monte-Carlo posterior means E(log theta_k | y) under the constrained
// Dirichlet posterior with parameter y + alpha, with standard errors.
struct PosteriorLogTheta {
  Eigen::Vector3d mean;
  Eigen::Vector3d se;
};
PosteriorLogTheta posterior_mean_log_theta(const Eigen::Ref<const Eigen::Vector3i>& y,
                                           const Eigen::Ref<const Eigen::Vector3d>& alpha,
                                           const TrineGeometry& geom, long n_draws,
                                           RngStream& rng);

// Expansion families over the constrained Dirichlet prior.
enum class ExpansionKind { g1_jeffreys_mix, g2_location_shift, physical_gamma };

struct ExpansionFamily {
  ExpansionKind kind = ExpansionKind::g1_jeffreys_mix;
  double alpha0 = 30.0;
  Eigen::Vector3d q = Eigen::Vector3d::Constant(1.0 / 3.0);
  double gamma0 = 0.0;

  // Dirichlet parameters at expansion value gamma. g1: mixes toward the
  // Jeffreys parameters 1/2; g2: shifts mass toward component 1 at fixed
  // precision. Throws outside the family's validity range.
  Eigen::Vector3d delta(double gamma) const;
  void validate() const;
};

// Score of the Jeffreys-mixture family at the baseline prior:
// sum_k (alpha0 q_k - 1/2) E(log theta_k | y). Small values indicate
// conflict (the lower tail is the conflict direction).
double score_g1(const Eigen::Ref<const Eigen::Vector3i>& y, double alpha0,
                const Eigen::Ref<const Eigen::Vector3d>& q, const TrineGeometry& geom,
                long n_post_draws, RngStream& rng);

// Score of the location-shift family:
// E(log theta1 | y) - (1/2) sum_{k>=2} E(log theta_k | y); large values
// indicate conflict involving the first component.
double score_g2(const Eigen::Ref<const Eigen::Vector3i>& y, double alpha0,
                const Eigen::Ref<const Eigen::Vector3d>& q, const TrineGeometry& geom,
                long n_post_draws, RngStream& rng);

// Full conflict checks for the two families: the statistic on the
// observed counts, calibrated against the baseline prior predictive
// (theta from the constrained Dirichlet(alpha0 q), y multinomial with
// the observed total). g1 uses the lower tail, g2 the upper.
CheckResult g1_check(const Eigen::Ref<const Eigen::Vector3i>& y_obs, double alpha0,
                     const Eigen::Ref<const Eigen::Vector3d>& q, const TrineGeometry& geom,
                     long n_post_draws, McConfig cfg);
CheckResult g2_check(const Eigen::Ref<const Eigen::Vector3i>& y_obs, double alpha0,
                     const Eigen::Ref<const Eigen::Vector3d>& q, const TrineGeometry& geom,
                     long n_post_draws, McConfig cfg);

// Power study: data simulated under each family's predictive over its
// gamma grid; both checks applied to every data set at level cfg.alpha.
struct FamilyPowerCurves {
  std::vector<double> gamma_grid;
  std::vector<double> power_g1_check;
  std::vector<double> power_g2_check;
};
struct G1G2PowerStudy {
  FamilyPowerCurves under_g1;
  FamilyPowerCurves under_g2;
  long n_reps = 0;
  double alpha = 0.05;
  std::uint64_t base_seed = 0;
};
G1G2PowerStudy g1_g2_power_study(double alpha0, const Eigen::Ref<const Eigen::Vector3d>& q,
                                 const TrineGeometry& geom,
                                 const std::vector<double>& gamma_grid_g1,
                                 const std::vector<double>& gamma_grid_g2, long n_reps,
                                 long n_trials, long n_post_draws, const McConfig& cfg);

// Tensor Gauss-Legendre quadrature over the unit disk in polar
// coordinates; nodes and log(r * weight) are precomputed once and shared.
class DiskQuadrature {
 public:
  DiskQuadrature(int n_radial, int n_angular);

  const Eigen::ArrayXd& s1() const { return s1_; }
  const Eigen::ArrayXd& s2() const { return s2_; }
  const Eigen::ArrayXd& log_rw() const { return log_rw_; }
  int n_radial() const { return n_radial_; }
  int n_angular() const { return n_angular_; }

 private:
  int n_radial_, n_angular_;
  Eigen::ArrayXd s1_, s2_, log_rw_;
};

inline constexpr int kDefaultRadialNodes = 64;
inline constexpr int kDefaultAngularNodes = 128;
inline constexpr double kDefaultFdStep = 1e-3;  // radians

// log theta_k at every quadrature node for a fixed geometry, clamped
// away from zero so boundary nodes stay finite.
struct ThetaLogGrid {
  Eigen::ArrayXd l1, l2, l3;
};
ThetaLogGrid theta_log_grid(const TrineGeometry& geom, const DiskQuadrature& quad);

// The disk integrals of the physical-constraint family, in log space:
//   H1 = int theta1^{n1+a-1} theta2^{n2+a-1} theta3^{n3+a-1} r dr dphi,
//   H2 = the same with the counts removed.
struct HIntegrals {
  double log_h1;
  double log_h2;
  // alpha < 1 with a zero count leaves an integrable boundary
  // singularity that the fixed Gauss grid resolves less well.
  bool reduced_accuracy = false;
};
HIntegrals h_integrals(const Eigen::Ref<const Eigen::Vector3i>& y, double alpha,
                       const TrineGeometry& geom, const DiskQuadrature& quad);

// d/dgamma log(H1/H2) at geom0, central finite difference with step h.
double physical_score(const Eigen::Ref<const Eigen::Vector3i>& y, double alpha,
                      const TrineGeometry& geom0, const DiskQuadrature& quad,
                      double h = kDefaultFdStep);

// Conflict check for the physical-constraint family: reference
// replicates draw theta from the Dirichlet(alpha) prior truncated to
// Theta_{gamma0} and y multinomial with the observed total; both
// one-sided p-values are reported (p_upper is the increasing-gamma
// check, p_lower the decreasing one). The gamma0 +- h grids and the H2
// integrals are computed once.
CheckResult physical_check(const Eigen::Ref<const Eigen::Vector3i>& y_obs, double alpha,
                           const TrineGeometry& geom0, McConfig cfg,
                           int n_radial = kDefaultRadialNodes,
                           int n_angular = kDefaultAngularNodes,
                           double h = kDefaultFdStep);

// Power curve of the physical check over true distortion angles, data
// simulated at each grid angle, checks run at the baseline geom0.
// `upper_tail` selects the increasing-gamma (true) or decreasing-gamma
// (sign-flipped) one-sided check.
PowerCurve physical_power_curve(double alpha, const TrineGeometry& geom0,
                                const std::vector<double>& gamma_grid, long n_reps,
                                long n_trials, bool upper_tail, const McConfig& cfg,
                                int n_radial = kDefaultRadialNodes,
                                int n_angular = kDefaultAngularNodes,
                                double h = kDefaultFdStep);

}  // namespace quantum
}  // namespace priorcheck
