#include <doctest.h>

#include <cmath>

#include "nselab/sigma_class.hpp"
#include "nselab/spectral_ops.hpp"

using namespace nselab;

namespace {

// Single mode k = (1, 0) with eigenvalue kappa0^2 = Lambda.
SpectralField single_mode(double Lambda) {
  GridSpec g = make_grid(2, two_pi / std::sqrt(Lambda));
  SpectralField u = SpectralField::zeros(g);
  u.at(1, 0) = Vec2c{0.0, cplx(0.3, 0.4)};
  u.at(-1, 0) = Vec2c{0.0, cplx(0.3, -0.4)};
  return u;
}

}  // namespace

TEST_CASE("shell ratio matches quotient of continuous norms") {
  CHECK(std::abs(shell_ratio(std::exp(8.0), 1, 2) - std::exp(4.0)) <= 1e-12 * std::exp(4.0));
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    double Lambda = i == 0 ? std::exp(8.0) : std::exp(rng.uniform(0.5, 10.0));
    double s1 = rng.uniform(0.2, 2.0), s2 = s1 + rng.uniform(0.1, 2.0);
    if (i == 0) s1 = 1, s2 = 2;
    SpectralField u = single_mode(Lambda);
    double q = c_sigma_norm(u, s1, SigmaMode::continuous).value / c_sigma_norm(u, s2, SigmaMode::continuous).value;
    double r = shell_ratio(Lambda, s1, s2);
    INFO("Lambda " << Lambda << " sigma " << s1 << " " << s2);
    CHECK(std::abs(q - r) <= 1e-12 * r);
  }
  CHECK_THROWS(shell_ratio(0.5, 1, 2));
  CHECK_THROWS(shell_ratio(10, 2, 1));
}

TEST_CASE("norms agree with a brute-force scan") {
  GridSpec g = make_grid(8);
  SpectralField u = random_field(g, 1.0, 3.0, 21);
  for (double sigma : {0.3, 1.0}) {
    double best_int = 0, best_cont = 0;
    for (int i = 0; i <= 4000; ++i) {
      double a = i * 0.005;
      double v = sobolev_norm(u, a) * std::exp(-sigma * a * a / 2);
      best_cont = std::max(best_cont, v);
      if (i % 200 == 0) best_int = std::max(best_int, v);
    }
    auto ri = c_sigma_norm(u, sigma, SigmaMode::integer);
    auto rc = c_sigma_norm(u, sigma, SigmaMode::continuous);
    CHECK(std::abs(ri.value - best_int) <= 1e-12 * best_int);
    CHECK(rc.value >= best_cont * (1 - 1e-13));
    CHECK(rc.value <= best_cont * (1 + 1e-4));
    CHECK(rc.value >= ri.value * (1 - 1e-14));
  }
  CHECK(c_sigma_norm(SpectralField::zeros(g), 1.0, SigmaMode::integer).value == 0);
  CHECK_THROWS(c_sigma_norm(u, 0.0, SigmaMode::integer));
}

TEST_CASE("profile norm matches field norm on integer alphas") {
  GridSpec g = make_grid(6, 3.0);
  SpectralField u = random_field(g, 1.0, 2.0, 4);
  std::vector<double> al;
  for (int a = 0; a <= 40; ++a) al.push_back(a);
  NormProfile p = norm_profile(u, al, 2.0);
  for (auto n : {SigmaNormalization::raw, SigmaNormalization::normalized}) {
    auto a = c_sigma_norm(p, 0.5, SigmaMode::integer, n);
    auto b = c_sigma_norm(u, 0.5, SigmaMode::integer, n, 2.0);
    CHECK(std::abs(a.value - b.value) <= 1e-12 * b.value);
    CHECK(std::abs(a.c0_hat - b.c0_hat) <= 1e-12 * b.c0_hat);
  }
}

TEST_CASE("estimator recovers exact model profiles") {
  for (double sigma : {0.1, 0.7, 2.5})
    for (double kappa0 : {1.0, 2.0}) {
      NormProfile p;
      p.nu = 0.5;
      p.kappa0 = kappa0;
      const double c0 = 3.7;
      for (int a = 1; a <= 12; ++a) {
        p.alphas.push_back(a);
        p.values.push_back(p.nu * std::pow(kappa0, a) * std::sqrt(c0) * std::exp(sigma * a * a / 2));
      }
      SigmaFit f = estimate_sigma(p);
      CHECK(std::abs(f.sigma_hat - sigma) <= 1e-12 * sigma);
      CHECK(std::abs(f.c0_hat - c0) <= 1e-12 * c0);
      CHECK_FALSE(f.degenerate);
    }
}

TEST_CASE("estimator flags single-shell profiles") {
  NormProfile p = norm_profile(single_mode(std::exp(3.0)), {1, 2, 3, 4, 5, 6});
  SigmaFit f = estimate_sigma(p, SigmaNormalization::raw);
  CHECK(f.degenerate);
  CHECK_THROWS(estimate_sigma(NormProfile{{1, 2}, {1, 2}}));
}

TEST_CASE("Gevrey-log fields sit in C(1/b)") {
  GridSpec g = make_grid(32);
  SpectralField flat = random_field(g, 0.0, 1e9, 5);
  std::vector<double> al;
  for (int a = 1; a <= 12; ++a) al.push_back(a);
  for (double b : {0.5, 1.0, 2.0}) {
    SpectralField u = gevrey_log_apply(flat, 3.0, b, -1);
    SigmaFit f = estimate_sigma(norm_profile(u, al));
    INFO("b " << b << " sigma_hat " << f.sigma_hat);
    CHECK(f.sigma_hat <= 1.05 / b);
    SpectralField back = gevrey_log_apply(u, 3.0, b, 1);
    CHECK(max_abs_diff(back, flat) <= 1e-10);
  }
  CHECK_THROWS(gevrey_log_apply(flat, 2.0, 1.0, 1));
  CHECK_THROWS(gevrey_log_apply(flat, 3.0, 0.0, 1));
}

TEST_CASE("Gevrey-log operator bound") {
  for (double a : {3.0, 10.0})
    for (double b : {0.5, 1.0, 2.0})
      for (int al = 0; al <= 20; ++al) CHECK(gevrey_log_opnorm(al, a, b, 16).within_bound());
  // Oracle for alpha = 1, b = 1, a = 3 on K = 1: modes |k| = 1, sqrt2.
  auto r = gevrey_log_opnorm(1, 3, 1, 1);
  double l1 = std::log(4.0), l2 = std::log(std::sqrt(2.0) + 3);
  double expect = std::max(-2 * l1 * l1, std::log(2.0) - 2 * l2 * l2);
  CHECK(std::abs(r.ln_discrete_sup - expect) <= 1e-14);
}
