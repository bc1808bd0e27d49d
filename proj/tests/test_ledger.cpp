#include <doctest.h>

#include <cmath>

#include "nselab/ledger.hpp"
#include "nselab/setup.hpp"

using namespace nselab;

namespace {

const double pi = 3.14159265358979323846;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("base constants follow their closed forms") {
  const double cL = std::pow(1 / (4 * pi * pi) + 1 / (std::sqrt(2.0) * pi) + 2, 0.25);
  for (double G : {1.0, 5.0}) {
    LedgerConstants c = base_constants(G);
    CHECK(rel(c.c_L, cL) <= 1e-15);
    CHECK(rel(c.delta1, 1 / (16 * 13824.0 * std::pow(cL, 8) * std::pow(G, 4))) <= 1e-14);
    CHECK(rel(c.R2, 2137 * G * G * G * std::pow(cL, 4)) <= 1e-14);
    CHECK(rel(c.Rt1, std::sqrt(2.0) * G) <= 1e-15);
    CHECK(c.delta2 <= c.delta1);
    CHECK(c.delta3 == c.delta2 / 2);
    CHECK(c.standing_assumption_ok);
    // Rt3 / R3 = (4 sqrt N2) / ((12 sqrt2 / pi) sqrt N3)
    CHECK(rel(c.R3 / c.Rt3, 3 * std::sqrt(2.0) / pi * std::sqrt(c.N3 / c.N2)) <= 1e-14);
  }
  CHECK(std::abs(1 / (cL * cL) - 0.667) < 1e-3);
  CHECK_FALSE(base_constants(0.5).standing_assumption_ok);
}

TEST_CASE("Gamma_3 is 27 2^15.5 c_L^8 Rt1^2") {
  LedgerConstants c = base_constants(1.0);
  double direct = 27 * std::pow(2.0, 15.5) * std::pow(c.c_L, 8) * c.Rt1 * c.Rt1;
  CHECK(rel(std::exp(ln_gamma_alpha(3, c)), direct) <= 1e-13);
  double g5 = std::pow(2.0, 6.5) * c.c_A * (std::pow(2.0, 7) * c.c_A * c.Rt1 * c.Rt2 + std::sqrt(c.Rt1 * c.Rt3));
  CHECK(rel(std::exp(ln_gamma_alpha(5, c)), g5) <= 1e-13);
  CHECK_THROWS(ln_gamma_alpha(2, c));
}

TEST_CASE("log-domain table agrees with direct evaluation where finite") {
  LedgerConstants c = base_constants(1.0);
  for (RtVariant v : {RtVariant::proof, RtVariant::statement}) {
    LedgerOptions opt;
    opt.variant = v;
    BoundTable t = conditional_table(c, 10, opt);
    std::vector<double> d = conditional_rt_sq_direct(c, 10, opt);
    REQUIRE(d.size() >= 4);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(rel(std::exp(t.rows[i].ln_rt_sq), d[i]) <= 1e-12);
  }
}

TEST_CASE("incremental and summed recursions agree") {
  LedgerConstants c = base_constants(1.0);
  BoundTable t = conditional_table(c, 12);
  std::vector<double> s = conditional_ln_rt_sq_summed(c, 12);
  for (int a = 4; a <= 12; ++a) CHECK(rel(s[a - 1], t.row(a).ln_rt_sq) <= 1e-13);
}

TEST_CASE("fixed-strip orderings and envelopes") {
  LedgerConstants c = base_constants(1.0);
  FixedEnvelope env;
  BoundTable t = conditional_table(c, 61, {}, &env);
  CHECK(env.C1.converged);
  CHECK(env.eta.converged);
  for (const OrderingCheck& o : ordering_checks(t)) {
    if (o.alpha < 3) continue;
    INFO("alpha " << o.alpha);
    CHECK(o.upper);
    CHECK(o.lower);
  }
  for (int a = 4; a <= 31; ++a) {
    REQUIRE(std::isfinite(t.row(a).envelope_ln));
    CHECK(t.row(a).ln_rt_sq <= t.row(a).envelope_ln);
  }

  ShrinkingEnvelope senv;
  BoundTable s = shrinking_table(c, 21, {}, &senv);
  CHECK(senv.C4.depth == 50);
  for (int a = 4; a <= 21; ++a) {
    if (!std::isfinite(s.row(a).envelope_ln)) continue;
    CHECK(s.row(a).ln_rt_sq <= s.row(a).envelope_ln);
  }
  for (int a = 4; a <= 21; ++a) CHECK(s.row(a).delta == doctest::Approx(s.row(a - 1).delta / 2));
}

TEST_CASE("rho_max and M_1 closed forms") {
  LedgerConstants c = base_constants(1.0);
  for (double x : {0.5, 2.0, 8.0}) {
    double br = std::cbrt(2.0) / 24 + x * x;
    double rho = std::sqrt(2.0) / (4 * 13824 * std::pow(c.c_L, 8) * br * br);
    CHECK(rel(rho_max(1.0, x, c), rho) <= 1e-14);
    CHECK(rel(m1(1.0, x) * m1(1.0, x), std::cbrt(2.0) / 24 + std::sqrt(2.0) * x * x) <= 1e-14);
  }
}

TEST_CASE("unconditional pipeline is monotone") {
  GridSpec g = make_grid(8);
  PhysicalSetup s = make_setup(kolmogorov_force(g, 2, 1.0, 1.0), 1.0);
  LedgerConstants c = base_constants(s);
  std::vector<double> Ga;
  for (int a = 0; a <= 10; ++a) Ga.push_back(std::pow(2.0, a));  // kf = 2, kappa0 = 1
  BoundTable u = unconditional_pipeline(c, Ga, 10);
  REQUIRE(u.rows.size() == 10);
  CHECK(rel(std::exp(0.5 * u.row(1).ln_rt_sq), c.Rt1) <= 1e-14);
  for (int a = 2; a <= 10; ++a) {
    CHECK(u.row(a).ln_rt_sq >= u.row(a - 1).ln_rt_sq);
    CHECK(u.row(a).delta > 0);
    CHECK(u.row(a).delta <= u.row(a - 1).delta);
  }
}

TEST_CASE("g regularity of the Kolmogorov force") {
  GridSpec g = make_grid(8);
  PhysicalSetup s = make_setup(kolmogorov_force(g, 2, 1.0, 1.0), 1.0);
  LedgerConstants c = base_constants(s);
  GRegularity r = g_regularity(s.g, 1.0, 6, c, conditional_table(c, 6));
  for (int a = 0; a <= 6; ++a) CHECK(rel(r.G_alpha[a], std::pow(2.0, a)) <= 1e-13);
  CHECK(rel(r.Lambda1, 4.0) <= 1e-13);
}

TEST_CASE("sigma propagation at sigma = 1") {
  LedgerConstants c = base_constants(1.0);
  const double l4 = std::log(4.0);
  SigmaPipelineResult r = sigma_propagation(1.0, 1.0, c, 4.0);
  CHECK(std::abs(r.sigma1 - (l4 + 2)) <= 1e-14 * r.sigma1);
  CHECK(std::abs(r.sigma2 - 3 * (l4 + 2)) <= 1e-14 * r.sigma2);
  CHECK(std::abs(r.sigma3 - (2 * l4 + 6 * (l4 + 2))) <= 1e-14 * r.sigma3);
  for (double sg : {0.01, 0.5, 1.0, 3.0, 20.0})
    for (double c0 : {1e-3, 1.0, 1e6}) CHECK(sigma_propagation(sg, c0, c, 4.0).alpha1 >= 4);
}

TEST_CASE("log_add") {
  CHECK(log_add(800, 800) == doctest::Approx(800 + std::log(2.0)));
  CHECK(log_add(-INFINITY, 3) == 3);
}

TEST_CASE("R_4^2 from the real-line recursion") {
  LedgerConstants c = base_constants(1.0);
  BoundTable t = conditional_table(c, 5);
  const double d = c.delta3;
  double g3 = std::exp(ln_gamma_alpha(3, c));
  double r4sq = 36 / (pi * pi) * (1 / d + 4 / (d * d) + 2 * std::sqrt(2.0) * g3) * c.Rt3 * c.Rt3;
  CHECK(rel(std::exp(t.row(4).ln_r_sq), r4sq) <= 1e-12);
  CHECK(rel(std::exp(t.row(3).ln_rt_sq), c.Rt3 * c.Rt3) <= 1e-14);
}
