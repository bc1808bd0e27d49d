#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nselab/field.hpp"
#include "nselab/ledger.hpp"
#include "nselab/setup.hpp"

namespace nselab {

// Path zeta = t0 + rho e^{i theta}, 0 <= rho <= rho_end, |theta| <= pi/4.
struct RaySpec {
  double t0 = 0;
  double theta = 0;
  double rho_end = 0;
  int steps = 0;  // 0: ceil(rho_end / dt)
};

void validate_ray(const RaySpec& ray);

struct IntegratorConfig {
  double dt = 0;              // 0: 0.1 / (nu kappa0^2 K^2)
  bool error_estimation = false;  // step doubling, reports max local error
  double max_field_norm = 0;  // guard on |A^{1/2}u|; 0: default_guard()
  bool nonlinear = true;      // false drops B (Stokes mode)
  int sample_every = 1;       // steps between recorded samples
  int field_every = 0;        // samples between stored fields; 0: none
  std::vector<double> alphas{0, 1, 2};
};

double default_dt(const PhysicalSetup& s);
// 1e3 * max(sqrt(2) G nu kappa0, nu kappa0 G, |A^{1/2} u0|), floored at nu kappa0.
double default_guard(const PhysicalSetup& s, const SpectralField& u0);

struct TrajectorySample {
  cplx zeta;
  double rho = 0;
  std::vector<double> norms;  // |A^{alpha/2} u| per configured alpha
  std::optional<SpectralField> field;
};

struct TrajectoryRecord {
  double t0 = 0;
  double theta = 0;
  double h = 0;  // uniform step actually used
  int steps_taken = 0;
  double guard = 0;
  std::vector<double> alphas;
  std::vector<TrajectorySample> samples;
  SpectralField final_state;
  bool failed = false;
  std::string failure;
  double max_step_error = 0;  // step-doubling estimate if enabled
};

// IFRK4 (Lawson) on w = u - (nu A)^{-1} g, so the linear flow is exact per
// mode for every force. With theta = 0 and real data the real symmetry is
// re-imposed after each step.
TrajectoryRecord integrate_ray(const SpectralField& u0, const PhysicalSetup& setup, const RaySpec& ray,
                               const IntegratorConfig& cfg);
TrajectoryRecord integrate_real(const SpectralField& u0, const PhysicalSetup& setup, double T,
                                const IntegratorConfig& cfg);

// e^{-nu A zeta} u0 + (1 - e^{-nu A zeta}) (nu A)^{-1} g
SpectralField stokes_exact(const SpectralField& u0, const SpectralField& g, cplx zeta, double nu);

// Simpson panels over consecutive sample triples (equal spacing, fields
// stored). Residuals are divided by the panel length, i.e. they are rates:
//   energy:    [|u|^2/2]  + int (nu |A^{1/2}u|^2 - Re(g,u))
//   enstrophy: [|A^{1/2}u|^2/2] + int (nu |Au|^2 - Re(g,Au))
struct BalancePoint {
  double t_mid = 0;
  double energy = 0;
  double enstrophy = 0;
  double energy_scale = 0;     // nu |A^{1/2}u|^2 + |(g,u)| at the midpoint
  double enstrophy_scale = 0;  // nu |Au|^2 + |(g,Au)|
};
std::vector<BalancePoint> balance_monitor(const TrajectoryRecord& traj, const PhysicalSetup& setup);

struct SteadyResult {
  SpectralField u;
  double residual = 0;  // |nu A u + B(u,u) - g| / |g|, 0 for g = 0
  int iterations = 0;
  bool converged = false;
};
// Fixed point iteration u <- (nu A)^{-1}(g - B(u,u)) from u = 0.
SteadyResult steady_state_solve(const PhysicalSetup& setup, int max_iter = 500, double tol = 1e-12);

struct ForceRecovery {
  SpectralField g_est;
  double rel_error = 0;                 // |g_est - g| / |g|
  std::vector<double> shell_deviation;  // |P_shell (g_est - g)|, shell = round(|k|)
};
// g = du/dt + nu A u + B(u,u) at stored sample i using the 4th-order central
// difference over samples i-2..i+2 (real trajectory, equal spacing).
ForceRecovery recover_force(const TrajectoryRecord& traj, std::size_t i, const PhysicalSetup& setup);

// Strip bounds along the attractor-like trajectory started at u0: after a real
// transient, |A^{alpha/2}u| on the real line is compared with R_alpha nu kappa0^alpha
// and every ray t0 + rho e^{i theta}, rho <= sqrt2 delta_alpha, with
// Rt_alpha nu kappa0^alpha. Margin = bound / measured (>= 1 means the bound holds).
struct StripVerifyConfig {
  int alpha = 1;                 // 1, 2 or 3
  double transient = 20;         // in units of 1/(nu kappa0^2)
  double dt = 0;                 // real-time step; 0: default_dt
  int n_angles = 9;              // equally spaced in [-pi/4, pi/4]
  int n_anchors = 8;
  double anchor_spacing = 0.25;  // in units of 1/(nu kappa0^2)
  int ray_steps = 16;
  double real_tolerance = 1e-3;  // real-line bound is R_alpha (1 + tol)
  int workers = 0;
};

struct RayMargin {
  double t0 = 0, theta = 0, rho_end = 0;
  double max_norm = 0, bound = 0, margin = 0;
  bool failed = false;
};

struct StripVerifyResult {
  int alpha = 1;
  double real_max = 0, real_bound = 0, real_margin = 0;
  double ray_margin = 0, min_margin = 0;
  std::vector<RayMargin> rays;
  std::vector<RayMargin> counterexamples;  // rays with margin < 1
  bool integration_failed = false;
  std::string failure;
};

StripVerifyResult verify_strip(const SpectralField& u0, const PhysicalSetup& setup, const StripVerifyConfig& cfg);

// Sector S(t0, rho_1), rho_1 = rho_max(G, x), x = |A^{1/2}u0|/(nu kappa0):
// |A^{1/2}V(zeta)| <= M_1(G, x) nu kappa0 at every step of every ray.
struct SectorResult {
  double x = 0, rho1 = 0, bound = 0;
  double max_norm = 0, margin = 0;
  int steps_checked = 0;
  bool failed = false;
};
SectorResult sector_check(const SpectralField& u0, const PhysicalSetup& setup, const std::vector<double>& thetas,
                          int steps, int workers = 0);

}  // namespace nselab
