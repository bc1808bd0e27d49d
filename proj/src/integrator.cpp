#include <cmath>
#include <limits>

#include "nselab/bilinear.hpp"
#include "nselab/dynamics.hpp"
#include "nselab/spectral_ops.hpp"

namespace nselab {

namespace {

constexpr double quarter_pi = 0.78539816339744830962;

using Coeffs = std::vector<Vec2c>;

struct Stepper {
  const PhysicalSetup& setup;
  cplx rot;  // e^{i theta}
  double h;
  bool nonlinear;
  bool real;
  Coeffs us;  // (nu A)^{-1} g
  std::vector<cplx> E, E2;
  BilinearWorkspace ws;
  SpectralField tmp, bout;
  Coeffs k1, k2, k3, k4, stage;

  Stepper(const PhysicalSetup& s, double theta, double h_, bool nl, bool real_)
      : setup(s), rot(std::polar(1.0, theta)), h(h_), nonlinear(nl), real(real_), ws(s.grid) {
    const GridSpec& g = s.grid;
    const double k0sq = g.kappa0 * g.kappa0;
    us.assign(g.modes(), Vec2c{0.0, 0.0});
    E.assign(g.modes(), 1.0);
    E2.assign(g.modes(), 1.0);
    for_each_mode(g, [&](int a, int b, int i) {
      if (a == 0 && b == 0) return;
      double lam0 = s.nu * k0sq * (a * a + b * b);
      us[i] = Vec2c{s.g.coeffs[i][0] / lam0, s.g.coeffs[i][1] / lam0};
      cplx lam = rot * lam0;
      E[i] = std::exp(-lam * h);
      E2[i] = std::exp(-lam * (0.5 * h));
    });
    tmp = SpectralField::zeros(g, real ? Symmetry::real : Symmetry::complex);
    for (Coeffs* c : {&k1, &k2, &k3, &k4, &stage}) c->assign(g.modes(), Vec2c{0.0, 0.0});
  }

  // out = -e^{i theta} B(w + us, w + us)
  void N(const Coeffs& w, Coeffs& out) {
    if (!nonlinear) {
      std::fill(out.begin(), out.end(), Vec2c{0.0, 0.0});
      return;
    }
    for (std::size_t i = 0; i < w.size(); ++i) tmp.coeffs[i] = Vec2c{w[i][0] + us[i][0], w[i][1] + us[i][1]};
    ws.apply(tmp, tmp, bout);
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = Vec2c{-rot * bout.coeffs[i][0], -rot * bout.coeffs[i][1]};
  }

  void step(Coeffs& w) {
    const std::size_t n = w.size();
    N(w, k1);
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < 2; ++c) stage[i][c] = E2[i] * (w[i][c] + 0.5 * h * k1[i][c]);
    N(stage, k2);
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < 2; ++c) stage[i][c] = E2[i] * w[i][c] + 0.5 * h * k2[i][c];
    N(stage, k3);
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < 2; ++c) stage[i][c] = E[i] * w[i][c] + h * E2[i] * k3[i][c];
    N(stage, k4);
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < 2; ++c)
        w[i][c] = E[i] * w[i][c] +
                  (h / 6) * (E[i] * k1[i][c] + 2.0 * E2[i] * (k2[i][c] + k3[i][c]) + k4[i][c]);
    if (real) {
      SpectralField f{setup.grid, Symmetry::real, std::move(w)};
      symmetrize_real(f);
      w = std::move(f.coeffs);
    }
  }

  SpectralField state(const Coeffs& w) const {
    SpectralField u{setup.grid, real ? Symmetry::real : Symmetry::complex, w};
    for (std::size_t i = 0; i < w.size(); ++i) {
      u.coeffs[i][0] += us[i][0];
      u.coeffs[i][1] += us[i][1];
    }
    return u;
  }
};

bool finite_field(const SpectralField& u) {
  for (const auto& c : u.coeffs)
    if (!std::isfinite(c[0].real()) || !std::isfinite(c[0].imag()) || !std::isfinite(c[1].real()) ||
        !std::isfinite(c[1].imag()))
      return false;
  return true;
}

}  // namespace

void validate_ray(const RaySpec& ray) {
  if (!(std::abs(ray.theta) <= quarter_pi * (1 + 1e-12)))
    throw std::invalid_argument("ray angle must satisfy |theta| <= pi/4");
  if (!(ray.rho_end > 0) || !std::isfinite(ray.rho_end)) throw std::invalid_argument("rho_end must be positive");
  if (ray.steps < 0) throw std::invalid_argument("steps must be >= 0");
}

double default_dt(const PhysicalSetup& s) {
  const double k0 = s.grid.kappa0;
  return 0.1 / (s.nu * k0 * k0 * double(s.grid.K) * s.grid.K);
}

double default_guard(const PhysicalSetup& s, const SpectralField& u0) {
  const double scale = s.nu * s.grid.kappa0;
  return 1e3 * std::max({std::sqrt(2.0) * s.G * scale, s.G * scale, sobolev_norm(u0, 1), scale});
}

TrajectoryRecord integrate_ray(const SpectralField& u0, const PhysicalSetup& setup, const RaySpec& ray,
                               const IntegratorConfig& cfg) {
  validate_ray(ray);
  require_same_modes(u0.grid, setup.grid);
  require_invariants(u0, 1e-12);
  if (cfg.sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
  const double dt = cfg.dt > 0 ? cfg.dt : default_dt(setup);
  const int n = ray.steps > 0 ? ray.steps : std::max(1, int(std::ceil(ray.rho_end / dt - 1e-9)));
  const double h = ray.rho_end / n;
  const bool real = ray.theta == 0 && u0.symmetry == Symmetry::real;

  TrajectoryRecord rec;
  rec.t0 = ray.t0;
  rec.theta = ray.theta;
  rec.h = h;
  rec.alphas = cfg.alphas;
  rec.guard = cfg.max_field_norm > 0 ? cfg.max_field_norm : default_guard(setup, u0);

  Stepper st(setup, ray.theta, h, cfg.nonlinear, real);
  std::optional<Stepper> half;
  if (cfg.error_estimation) half.emplace(setup, ray.theta, 0.5 * h, cfg.nonlinear, real);

  Coeffs w = u0.coeffs;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i][0] -= st.us[i][0];
    w[i][1] -= st.us[i][1];
  }
  const cplx dir = std::polar(1.0, ray.theta);
  int nsamples = 0;
  auto record = [&](int step, const SpectralField& u) {
    TrajectorySample s;
    s.rho = step * h;
    s.zeta = ray.t0 + s.rho * dir;
    for (double a : cfg.alphas) s.norms.push_back(sobolev_norm(u, a));
    if (cfg.field_every > 0 && nsamples % cfg.field_every == 0) s.field = u;
    rec.samples.push_back(std::move(s));
    ++nsamples;
  };
  SpectralField u = real ? u0 : SpectralField{u0.grid, Symmetry::complex, u0.coeffs};
  record(0, u);
  for (int k = 1; k <= n; ++k) {
    Coeffs wh;
    if (half) wh = w;
    st.step(w);
    u = st.state(w);
    if (half) {
      half->step(wh);
      half->step(wh);
      SpectralField d = u - half->state(wh);
      rec.max_step_error = std::max(rec.max_step_error, sobolev_norm(d, 1) / 15);
    }
    rec.steps_taken = k;
    double en = sobolev_norm(u, 1);
    if (!finite_field(u) || !(en <= rec.guard)) {
      rec.failed = true;
      rec.failure = "blowup guard tripped at rho=" + std::to_string(k * h) + " (|A^{1/2}u|=" +
                    std::to_string(en) + ", guard=" + std::to_string(rec.guard) + ")";
      record(k, u);
      break;
    }
    if (k % cfg.sample_every == 0 || k == n) record(k, u);
  }
  rec.final_state = std::move(u);
  return rec;
}

TrajectoryRecord integrate_real(const SpectralField& u0, const PhysicalSetup& setup, double T,
                                const IntegratorConfig& cfg) {
  if (u0.symmetry != Symmetry::real) throw std::invalid_argument("integrate_real needs a real initial field");
  RaySpec ray;
  ray.rho_end = T;
  return integrate_ray(u0, setup, ray, cfg);
}

}  // namespace nselab
