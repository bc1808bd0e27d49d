// Acceptance campaign: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "nselab/bilinear.hpp"
#include "nselab/dynamics.hpp"
#include "nselab/ledger.hpp"
#include "nselab/parallel.hpp"
#include "nselab/sigma_class.hpp"
#include "nselab/spectral_ops.hpp"
#include "nselab/suites.hpp"

using namespace nselab;

namespace {

constexpr double quarter_pi = 0.78539816339744830962;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

Outcome bilinear_oracle() {
  double worst = 0;
  for (int K : {8, 12, 16}) {
    GridSpec g = make_grid(K);
    auto errs = parallel_map(50, 0, [&](std::size_t i) {
      Rng rng(derive_seed(1000 + K, i));
      Symmetry sym = i % 2 ? Symmetry::complex : Symmetry::real;
      auto fam = FieldFamily(i % 3);
      SpectralField u = sample_family(g, fam, rng, sym), v = sample_family(g, FieldFamily((i + 1) % 3), rng, sym);
      SpectralField d = bilinear_direct(u, v);
      double s = max_abs_coeff(d);
      return s == 0 ? max_abs_coeff(bilinear_fft(u, v)) : max_abs_diff(bilinear_fft(u, v), d) / s;
    });
    for (double e : errs) worst = std::max(worst, e);
  }
  return {worst <= 1e-12, "max rel error " + fmt(worst) + " over 150 pairs"};
}

Outcome identities() {
  GridSpec g = make_grid(8);
  SuiteCampaign r = identity_campaign(g, 100, 2024, Symmetry::real);
  double worst = 0;
  for (auto& [k, v] : r.max_value) worst = std::max(worst, v);
  SuiteCampaign c = identity_campaign(g, 20, 2025, Symmetry::complex);
  bool na = c.not_applicable_marked == 20;
  bool all5 = r.count.size() == 5;
  return {worst <= 1e-11 && na && all5,
          "max residual " + fmt(worst) + ", complex n/a flagged " + std::to_string(c.not_applicable_marked) + "/20"};
}

Outcome inequalities() {
  GridSpec g = make_grid(8);
  std::vector<int> al{4, 5, 6, 7, 8};
  SuiteCampaign r = inequality_campaign(g, 1000, 77, Symmetry::real, al);
  SuiteCampaign c = inequality_campaign(g, 1000, 78, Symmetry::complex, al);
  double worst = 0;
  std::string wname;
  int families = 0;
  for (const SuiteCampaign* s : {&r, &c})
    for (auto& [k, v] : s->max_value) {
      ++families;
      if (v > worst) worst = v, wname = k;
    }
  return {worst <= 1, "worst lhs/rhs " + fmt(worst) + " (" + wname + "), " + std::to_string(families) + " check families"};
}

PhysicalSetup kolmogorov(int K, int kf, double G) { return make_setup(kolmogorov_force(make_grid(K), kf, G, 1.0), 1.0); }

Outcome integrator() {
  PhysicalSetup s = kolmogorov(16, 2, 3.0);
  SpectralField u0 = random_field(s.grid, 1.0, 4.0, 9);
  IntegratorConfig lin;
  lin.nonlinear = false;
  double stokes = 0;
  for (double th : {-quarter_pi, 0.0, quarter_pi}) {
    TrajectoryRecord tr = integrate_ray(u0, s, RaySpec{0.0, th, 0.5, 100}, lin);
    SpectralField ex = stokes_exact(u0, s.g, std::polar(0.5, th), 1.0);
    stokes = std::max(stokes, max_abs_diff(tr.final_state, ex) / max_abs_coeff(ex));
  }
  PhysicalSetup s1 = kolmogorov(8, 1, 2.0);
  SpectralField v0 = scaled_to_norm(random_field(s1.grid, 1.0, 3.0, 2), 1, 20.0);
  IntegratorConfig ic;
  auto run = [&](int n) { return integrate_ray(v0, s1, RaySpec{0.0, 0.3, 0.1, n}, ic).final_state; };
  SpectralField ref = run(640);
  double ratio = sobolev_norm(run(10) - ref, 0) / sobolev_norm(run(20) - ref, 0);
  return {stokes <= 1e-10 && ratio >= 12 && ratio <= 20, "Stokes rel error " + fmt(stokes) + ", dt/(dt/2) error ratio " + fmt(ratio)};
}

Outcome balance() {
  PhysicalSetup s = kolmogorov(16, 2, 2.0);
  SpectralField u0 = scaled_to_norm(random_field(s.grid, 1.0, 4.0, 3), 1, 3.0);
  auto worst_rel = [&](double dt) {
    IntegratorConfig ic;
    ic.dt = dt;
    ic.field_every = 1;
    TrajectoryRecord tr = integrate_real(u0, s, 0.5, ic);
    double w = 0;
    for (const auto& b : balance_monitor(tr, s))
      w = std::max({w, std::abs(b.energy) / b.energy_scale, std::abs(b.enstrophy) / b.enstrophy_scale});
    return w;
  };
  // Residuals carry the Simpson and RK4 truncation, both fourth order.
  double r1 = worst_rel(1e-3), r2 = worst_rel(5e-4);
  bool order = r1 <= 1e-3 && (r1 / r2 >= 12 || r2 <= 1e-11);

  GridSpec g = make_grid(16);
  PhysicalSetup free = make_setup(SpectralField::zeros(g), 1.0);
  SpectralField w0 = scaled_to_norm(random_field(g, 1.0, 4.0, 8), 1, 10.0);
  IntegratorConfig ic;
  ic.dt = 0.005;
  TrajectoryRecord tr = integrate_real(w0, free, 1.0, ic);
  const double n0 = sobolev_norm(w0, 0);
  double excess = -INFINITY;
  for (const auto& smp : tr.samples) excess = std::max(excess, smp.norms[0] - std::exp(-smp.zeta.real()) * n0);
  return {order && excess <= 1e-10, "balance rel residual " + fmt(r1) + " -> " + fmt(r2) +
                                        " at dt/2, max decay excess " + fmt(excess)};
}

Outcome steady() {
  PhysicalSetup s = kolmogorov(16, 1, 0.5);
  SteadyResult st = steady_state_solve(s);
  IntegratorConfig ic;
  ic.dt = 0.01;
  ic.sample_every = 100000;
  TrajectoryRecord tr = integrate_real(random_field(s.grid, 1.0, 4.0, 5), s, 40.0, ic);
  double dist = sobolev_norm(tr.final_state - st.u, 0);
  return {s.single_point_regime && st.residual <= 1e-10 && dist <= 1e-7,
          "residual " + fmt(st.residual) + " (|g|-relative), long-time distance " + fmt(dist)};
}

Outcome strip() {
  std::ostringstream d;
  bool ok = true;
  for (double G : {1.0, 5.0}) {
    PhysicalSetup s = kolmogorov(64, 2, G);
    SpectralField u0 = scaled_to_norm(random_field(s.grid, 2.0, 4.0, 31), 1, 0.5 * G);
    StripVerifyConfig cfg;
    cfg.dt = 5e-3;
    StripVerifyResult r = verify_strip(u0, s, cfg);
    ok = ok && !r.integration_failed && r.min_margin >= 1 && r.rays.size() == 72;
    d << "G=" << G << ": real margin " << fmt(r.real_margin) << ", ray margin " << fmt(r.ray_margin) << "; ";
  }
  return {ok, d.str()};
}

Outcome sector() {
  PhysicalSetup s = kolmogorov(16, 2, 1.0);
  std::vector<double> thetas{-quarter_pi, -quarter_pi / 2, 0, quarter_pi / 2, quarter_pi};
  double worst = INFINITY;
  int steps = 0;
  bool ok = true;
  for (double x : {0.5, 2.0, 8.0})
    for (int i = 0; i < 10; ++i) {
      SpectralField u0 = scaled_to_norm(random_field(s.grid, 1.0 + 0.2 * i, 3.0, derive_seed(88, i)), 1, x);
      SectorResult r = sector_check(u0, s, thetas, 32);
      ok = ok && !r.failed && r.margin >= 1;
      worst = std::min(worst, r.margin);
      steps += r.steps_checked;
    }
  return {ok, "min margin " + fmt(worst) + " over " + std::to_string(steps) + " steps"};
}

Outcome ledger() {
  LedgerConstants c = base_constants(1.0);
  FixedEnvelope fe;
  BoundTable t = conditional_table(c, 61, {}, &fe);
  int bad = 0;
  std::string which;
  for (const auto& o : ordering_checks(t)) {
    if (o.alpha > 60) continue;
    if (!o.upper || !o.lower) {
      ++bad;
      which += " alpha=" + std::to_string(o.alpha) + (o.upper ? "" : "(upper)") + (o.lower ? "" : "(lower)");
    }
  }
  bool a = bad == 0;

  double env_worst = -INFINITY;
  for (int al = 4; al <= 31; ++al) env_worst = std::max(env_worst, t.row(al).ln_rt_sq - t.row(al).envelope_ln);
  ShrinkingEnvelope se;
  BoundTable sh = shrinking_table(c, 21, {}, &se);
  double sh_worst = -INFINITY;
  for (int al = 4; al <= 21; ++al) sh_worst = std::max(sh_worst, sh.row(al).ln_rt_sq - sh.row(al).envelope_ln);
  bool b = env_worst <= 0 && sh_worst <= 0 && se.C4.depth == 50;

  double dev = 0;
  std::vector<double> dir = conditional_rt_sq_direct(c, 61);
  for (std::size_t i = 0; i < dir.size(); ++i) dev = std::max(dev, std::abs(std::exp(t.rows[i].ln_rt_sq) / dir[i] - 1));
  bool cc = dev <= 1e-12;

  std::string d = std::string("(a) ") + (a ? "ok" : std::to_string(bad) + " violation(s):" + which) +
                  "; (b) max ln(table/envelope) fixed " + fmt(env_worst) + ", shrinking " + fmt(sh_worst) +
                  " (C4 converged=" + (se.C4.converged ? "yes" : "no") + ")" + "; (c) max rel dev " + fmt(dev) +
                  " over " + std::to_string(dir.size()) + " finite rows";
  return {a && b && cc, d};
}

SpectralField mode_with_eigenvalue(double Lambda) {
  GridSpec g = make_grid(2, two_pi / std::sqrt(Lambda));
  SpectralField u = SpectralField::zeros(g);
  u.at(0, 1) = Vec2c{cplx(0.2, -0.1), 0.0};
  u.at(0, -1) = Vec2c{cplx(0.2, 0.1), 0.0};
  return u;
}

Outcome sigma_exact() {
  Rng rng(10);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    double L = i == 0 ? std::exp(8.0) : std::exp(rng.uniform(0.5, 12.0));
    double s1 = i == 0 ? 1.0 : rng.uniform(0.1, 3.0);
    double s2 = i == 0 ? 2.0 : s1 + rng.uniform(0.05, 3.0);
    SpectralField u = mode_with_eigenvalue(L);
    double q = c_sigma_norm(u, s1, SigmaMode::continuous).value / c_sigma_norm(u, s2, SigmaMode::continuous).value;
    worst = std::max(worst, std::abs(q / shell_ratio(L, s1, s2) - 1));
  }
  double e4 = std::abs(shell_ratio(std::exp(8.0), 1, 2) / std::exp(4.0) - 1);
  return {worst <= 1e-12 && e4 <= 1e-12, "max rel dev " + fmt(worst) + ", ratio(e^8,1,2)/e^4 - 1 = " + fmt(e4)};
}

Outcome sigma_estimator() {
  double worst = 0;
  for (double sigma : {0.05, 0.5, 1.0, 4.0}) {
    NormProfile p;
    for (int a = 0; a <= 15; ++a) {
      p.alphas.push_back(a);
      p.values.push_back(std::sqrt(2.5) * std::exp(sigma * a * a / 2));
    }
    SigmaFit f = estimate_sigma(p);
    worst = std::max({worst, std::abs(f.sigma_hat / sigma - 1), std::abs(f.c0_hat / 2.5 - 1)});
  }
  GridSpec g = make_grid(64);
  SpectralField flat = random_field(g, 0.0, 1e12, 13);
  std::vector<double> al;
  for (int a = 1; a <= 12; ++a) al.push_back(a);
  bool member = true;
  std::string d;
  for (double b : {0.5, 1.0, 2.0}) {
    SigmaFit f = estimate_sigma(norm_profile(gevrey_log_apply(flat, 3.0, b, -1), al));
    member = member && f.sigma_hat <= 1.05 / b;
    d += " b=" + fmt(b) + ": sigma_hat*b=" + fmt(f.sigma_hat * b);
  }
  return {worst <= 1e-12 && member, "exact-model max rel error " + fmt(worst) + ";" + d};
}

Outcome gevrey_bound() {
  double worst = -INFINITY;
  for (double a : {3.0, 10.0})
    for (double b : {0.5, 1.0, 2.0})
      for (int al = 0; al <= 20; ++al) {
        GevreyOpNorm r = gevrey_log_opnorm(al, a, b, 64);
        worst = std::max(worst, r.ln_discrete_sup - r.ln_bound);
      }
  return {worst <= 0, "max ln(sup/bound) " + fmt(worst)};
}

Outcome sigma_propagation_check() {
  LedgerConstants c = base_constants(1.0);
  SigmaPipelineResult r = sigma_propagation(1.0, 1.0, c, 4.0);
  const double l4 = std::log(4.0);
  double e = std::max({std::abs(r.sigma1 / (l4 + 2) - 1), std::abs(r.sigma2 / (3 * (l4 + 2)) - 1),
                       std::abs(r.sigma3 / (2 * l4 + 6 * (l4 + 2)) - 1)});
  int amin = 1 << 30;
  for (double s : {1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0})
    for (double c0 : {1e-6, 1.0, 1e6})
      for (double G : {1.0, 5.0}) amin = std::min(amin, sigma_propagation(s, c0, base_constants(G), 4.0).alpha1);
  return {e <= 1e-14 && amin >= 4, "max rel error " + fmt(e) + ", min alpha1 " + std::to_string(amin)};
}

}  // namespace

int main() {
  struct Item {
    const char* name;
    std::function<Outcome()> f;
  };
  const Item items[] = {
      {"bilinear oracle equivalence", bilinear_oracle},
      {"algebraic identities", identities},
      {"proved-inequality conformance", inequalities},
      {"integrator correctness", integrator},
      {"balance laws", balance},
      {"steady regime", steady},
      {"strip verification", strip},
      {"sector bound", sector},
      {"ledger consistency", ledger},
      {"sigma-class exactness", sigma_exact},
      {"sigma estimator", sigma_estimator},
      {"Gevrey-log operator bound", gevrey_bound},
      {"sigma-propagation arithmetic", sigma_propagation_check},
  };
  int passed = 0, n = 0;
  for (const auto& it : items) {
    ++n;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it.f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    passed += o.pass;
    std::printf("[%2d] %s %s: %s (%.1f s)\n", n, o.pass ? "PASS" : "FAIL", it.name, o.detail.c_str(), sec);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria pass\n", passed, n);
  return 0;
}
