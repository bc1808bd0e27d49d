#include <cmath>

#include "nselab/bilinear.hpp"
#include "nselab/dynamics.hpp"
#include "nselab/spectral_ops.hpp"

namespace nselab {

SpectralField stokes_exact(const SpectralField& u0, const SpectralField& g, cplx zeta, double nu) {
  require_same_modes(u0.grid, g.grid);
  const bool real = zeta.imag() == 0 && u0.symmetry == Symmetry::real && g.symmetry == Symmetry::real;
  SpectralField u = SpectralField::zeros(u0.grid, real ? Symmetry::real : Symmetry::complex);
  const double k0sq = u0.grid.kappa0 * u0.grid.kappa0;
  for_each_mode(u0.grid, [&](int a, int b, int i) {
    if (a == 0 && b == 0) return;
    double lam = nu * k0sq * (a * a + b * b);
    cplx e = std::exp(-lam * zeta);
    for (int c = 0; c < 2; ++c) u.coeffs[i][c] = e * u0.coeffs[i][c] + (1.0 - e) * g.coeffs[i][c] / lam;
  });
  return u;
}

std::vector<BalancePoint> balance_monitor(const TrajectoryRecord& traj, const PhysicalSetup& setup) {
  if (traj.theta != 0) throw std::invalid_argument("balance_monitor needs a real-time trajectory");
  std::vector<const TrajectorySample*> s;
  for (const auto& x : traj.samples)
    if (x.field) s.push_back(&x);
  if (s.size() < 3) throw std::invalid_argument("balance_monitor: fewer than three stored snapshots");
  const double nu = setup.nu;
  struct Q {
    double t, E, Z, fE, fZ, sE, sZ;
  };
  std::vector<Q> q;
  for (auto* x : s) {
    const SpectralField& u = *x->field;
    double n0 = sobolev_norm(u, 0), n1 = sobolev_norm(u, 1), n2 = sobolev_norm(u, 2);
    double gu = inner_product(setup.g, u).real();
    double gAu = inner_product(setup.g, apply_power(u, 1.0)).real();
    q.push_back({x->zeta.real(), n0 * n0, n1 * n1, nu * n1 * n1 - gu, nu * n2 * n2 - gAu, nu * n1 * n1 + std::abs(gu),
                 nu * n2 * n2 + std::abs(gAu)});
  }
  std::vector<BalancePoint> out;
  for (std::size_t i = 0; i + 2 < q.size(); i += 2) {
    double h0 = q[i + 1].t - q[i].t, h1 = q[i + 2].t - q[i + 1].t;
    if (std::abs(h0 - h1) > 1e-9 * std::max(h0, h1))
      throw std::invalid_argument("balance_monitor: snapshots must be equally spaced");
    double len = q[i + 2].t - q[i].t;
    auto simpson = [&](double Q::*f) { return len / 6 * (q[i].*f + 4 * q[i + 1].*f + q[i + 2].*f); };
    BalancePoint p;
    p.t_mid = q[i + 1].t;
    p.energy = (0.5 * (q[i + 2].E - q[i].E) + simpson(&Q::fE)) / len;
    p.enstrophy = (0.5 * (q[i + 2].Z - q[i].Z) + simpson(&Q::fZ)) / len;
    p.energy_scale = q[i + 1].sE;
    p.enstrophy_scale = q[i + 1].sZ;
    out.push_back(p);
  }
  return out;
}

SteadyResult steady_state_solve(const PhysicalSetup& setup, int max_iter, double tol) {
  const GridSpec& g = setup.grid;
  const double k0sq = g.kappa0 * g.kappa0;
  const double gn = sobolev_norm(setup.g, 0);
  SteadyResult r;
  r.u = SpectralField::zeros(g, Symmetry::real);
  if (gn == 0) {
    r.converged = true;
    return r;
  }
  BilinearWorkspace ws(g);
  SpectralField b;
  for (int it = 1; it <= max_iter; ++it) {
    ws.apply(r.u, r.u, b);
    SpectralField next = SpectralField::zeros(g, Symmetry::real);
    for_each_mode(g, [&](int a, int c, int i) {
      if (a == 0 && c == 0) return;
      double lam = setup.nu * k0sq * (a * a + c * c);
      for (int j = 0; j < 2; ++j) next.coeffs[i][j] = (setup.g.coeffs[i][j] - b.coeffs[i][j]) / lam;
    });
    symmetrize_real(next);
    r.u = std::move(next);
    r.iterations = it;
    ws.apply(r.u, r.u, b);
    SpectralField res = cplx(setup.nu) * apply_power(r.u, 1.0) + b - setup.g;
    r.residual = sobolev_norm(res, 0) / gn;
    if (!std::isfinite(r.residual)) break;
    if (r.residual <= tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

ForceRecovery recover_force(const TrajectoryRecord& traj, std::size_t i, const PhysicalSetup& setup) {
  if (traj.theta != 0) throw std::invalid_argument("recover_force needs a real-time trajectory");
  if (i < 2 || i + 2 >= traj.samples.size()) throw std::invalid_argument("recover_force: insufficient stencil");
  const SpectralField* f[5];
  for (int j = 0; j < 5; ++j) {
    const auto& s = traj.samples[i - 2 + j];
    if (!s.field) throw std::invalid_argument("recover_force: stencil sample without stored field");
    f[j] = &*s.field;
  }
  double h = traj.samples[i + 1].rho - traj.samples[i].rho;
  for (int j = 0; j < 4; ++j) {
    double hj = traj.samples[i - 1 + j].rho - traj.samples[i - 2 + j].rho;
    if (std::abs(hj - h) > 1e-9 * h) throw std::invalid_argument("recover_force: stencil must be equally spaced");
  }
  const SpectralField& u = *f[2];
  SpectralField dudt = cplx(1.0 / (12 * h)) * ((*f[0] - *f[4]) + cplx(8.0) * (*f[3] - *f[1]));
  ForceRecovery out;
  out.g_est = dudt + cplx(setup.nu) * apply_power(u, 1.0) + bilinear_fft(u, u);
  symmetrize_real(out.g_est);
  SpectralField d = out.g_est - setup.g;
  double gn = sobolev_norm(setup.g, 0);
  out.rel_error = gn > 0 ? sobolev_norm(d, 0) / gn : sobolev_norm(d, 0);
  const GridSpec& g = u.grid;
  out.shell_deviation.assign(int(std::ceil(std::sqrt(2.0) * g.K)) + 1, 0.0);
  for_each_mode(g, [&](int a, int b, int k) {
    int shell = int(std::lround(std::hypot(a, b)));
    out.shell_deviation[shell] += std::norm(d.coeffs[k][0]) + std::norm(d.coeffs[k][1]);
  });
  for (double& x : out.shell_deviation) x = g.L * std::sqrt(x);
  return out;
}

}  // namespace nselab
