#include <algorithm>
#include <cmath>

#include "nselab/dynamics.hpp"
#include "nselab/parallel.hpp"
#include "nselab/spectral_ops.hpp"

namespace nselab {

namespace {
constexpr double quarter_pi = 0.78539816339744830962;

std::vector<double> angles(int n) {
  if (n == 1) return {0.0};
  std::vector<double> a;
  for (int i = 0; i < n; ++i) a.push_back(-quarter_pi + 2 * quarter_pi * i / (n - 1));
  return a;
}
}  // namespace

StripVerifyResult verify_strip(const SpectralField& u0, const PhysicalSetup& setup, const StripVerifyConfig& cfg) {
  if (cfg.alpha < 1 || cfg.alpha > 3) throw std::invalid_argument("verify_strip: alpha must be 1, 2 or 3");
  if (cfg.n_angles < 1 || cfg.n_anchors < 1 || cfg.ray_steps < 1)
    throw std::invalid_argument("verify_strip: sweep sizes must be positive");
  const LedgerConstants c = base_constants(setup);
  const double k0 = setup.grid.kappa0, tu = 1 / (setup.nu * k0 * k0);
  const double scale = setup.nu * std::pow(k0, cfg.alpha);
  const double R[3] = {c.R1, c.R2, c.R3}, Rt[3] = {c.Rt1, c.Rt2, c.Rt3}, d[3] = {c.delta1, c.delta2, c.delta3};

  StripVerifyResult out;
  out.alpha = cfg.alpha;
  out.real_bound = R[cfg.alpha - 1] * scale * (1 + cfg.real_tolerance);

  IntegratorConfig ic;
  ic.dt = cfg.dt;
  ic.alphas = {double(cfg.alpha)};
  ic.max_field_norm = 0;

  TrajectoryRecord tr = integrate_real(u0, setup, cfg.transient * tu, ic);
  if (tr.failed) {
    out.integration_failed = true;
    out.failure = tr.failure;
    return out;
  }
  std::vector<SpectralField> anchors;
  SpectralField u = tr.final_state;
  for (int j = 0; j < cfg.n_anchors; ++j) {
    anchors.push_back(u);
    out.real_max = std::max(out.real_max, sobolev_norm(u, cfg.alpha));
    if (j + 1 == cfg.n_anchors) break;
    RaySpec seg;
    seg.t0 = cfg.transient * tu + j * cfg.anchor_spacing * tu;
    seg.rho_end = cfg.anchor_spacing * tu;
    TrajectoryRecord s = integrate_ray(u, setup, seg, ic);
    if (s.failed) {
      out.integration_failed = true;
      out.failure = s.failure;
      return out;
    }
    for (const auto& smp : s.samples) out.real_max = std::max(out.real_max, smp.norms[0]);
    u = s.final_state;
  }
  out.real_margin = out.real_max > 0 ? out.real_bound / out.real_max : INFINITY;

  const std::vector<double> th = angles(cfg.n_angles);
  const double rho_end = std::sqrt(2.0) * d[cfg.alpha - 1];
  const double bound = Rt[cfg.alpha - 1] * scale;
  const int n = cfg.n_anchors * cfg.n_angles;
  out.rays = parallel_map(n, cfg.workers, [&](int i) {
    int j = i / cfg.n_angles;
    RaySpec ray;
    ray.t0 = cfg.transient * tu + j * cfg.anchor_spacing * tu;
    ray.theta = th[i % cfg.n_angles];
    ray.rho_end = rho_end;
    ray.steps = cfg.ray_steps;
    TrajectoryRecord r = integrate_ray(anchors[j], setup, ray, ic);
    RayMargin m;
    m.t0 = ray.t0;
    m.theta = ray.theta;
    m.rho_end = rho_end;
    m.bound = bound;
    m.failed = r.failed;
    for (const auto& smp : r.samples) m.max_norm = std::max(m.max_norm, smp.norms[0]);
    m.margin = r.failed ? 0 : (m.max_norm > 0 ? bound / m.max_norm : INFINITY);
    return m;
  });
  out.ray_margin = INFINITY;
  for (const auto& m : out.rays) {
    out.ray_margin = std::min(out.ray_margin, m.margin);
    if (m.margin < 1) out.counterexamples.push_back(m);
  }
  out.min_margin = std::min(out.real_margin, out.ray_margin);
  return out;
}

SectorResult sector_check(const SpectralField& u0, const PhysicalSetup& setup, const std::vector<double>& thetas,
                          int steps, int workers) {
  const LedgerConstants c = base_constants(setup);
  const double k0 = setup.grid.kappa0;
  SectorResult out;
  out.x = sobolev_norm(u0, 1) / (setup.nu * k0);
  out.rho1 = rho_max(setup.G, out.x, c);
  out.bound = m1(setup.G, out.x) * setup.nu * k0;
  IntegratorConfig ic;
  ic.alphas = {1.0};
  struct One {
    double max_norm = 0;
    int count = 0;
    bool failed = false;
  };
  auto res = parallel_map(int(thetas.size()), workers, [&](int i) {
    RaySpec ray;
    ray.theta = thetas[i];
    ray.rho_end = out.rho1;
    ray.steps = steps;
    TrajectoryRecord r = integrate_ray(u0, setup, ray, ic);
    One o;
    o.failed = r.failed;
    for (const auto& s : r.samples) o.max_norm = std::max(o.max_norm, s.norms[0]);
    o.count = int(r.samples.size());
    return o;
  });
  for (const auto& o : res) {
    out.max_norm = std::max(out.max_norm, o.max_norm);
    out.steps_checked += o.count;
    out.failed = out.failed || o.failed;
  }
  out.margin = out.failed ? 0 : (out.max_norm > 0 ? out.bound / out.max_norm : INFINITY);
  return out;
}

}  // namespace nselab
