#include <cmath>
#include <limits>

#include "nselab/ledger.hpp"
#include "nselab/spectral_ops.hpp"

namespace nselab {

namespace {
const double pi = two_pi / 2;
double nk2(const LedgerConstants& c) { return c.nu * c.kappa0 * c.kappa0; }
double cL8(const LedgerConstants& c) { return std::pow(c.c_L, 8); }
}  // namespace

double rho_max(double G, double x, const LedgerConstants& c) {
  double s = std::cbrt(2.0) * G * G / 24 + x * x;
  return std::sqrt(2.0) / (4 * std::pow(24.0, 3) * cL8(c) * s * s * nk2(c));
}

double m1(double G, double x) { return std::sqrt(std::cbrt(2.0) * G * G / 24 + std::sqrt(2.0) * x * x); }

double ln_M2(double G, double G1, double x, const LedgerConstants& c) {
  double M = m1(G, x), rho = rho_max(G, x, c);
  double e = 27 * std::pow(2.0, 11.5) * cL8(c) * nk2(c) * std::pow(M, 4) * rho;
  return e + 0.5 * std::log(x * x + G1 * G1 / (27 * std::pow(2.0, 10) * cL8(c)) / std::pow(M, 4));
}

double ln_M3(double G, double G2, double x, const LedgerConstants& c) {
  double M = m1(G, x), rho = rho_max(G, x, c);
  double e = 27 * std::pow(2.0, 15.5) * cL8(c) * nk2(c) * std::pow(M, 4) * rho;
  return e + 0.5 * std::log(x * x + G2 * G2 / (27 * std::pow(2.0, 15) * cL8(c)) / std::pow(M, 4));
}

double ln_Mbeta(int beta, double G, double G_prev, double G1, double G2, double x, const LedgerConstants& c,
                double* gamma_beta) {
  if (beta < 4) throw std::invalid_argument("ln_Mbeta: beta must be >= 4");
  double M1 = m1(G, x), M2 = std::exp(ln_M2(G, G1, x, c)), M3 = std::exp(ln_M3(G, G2, x, c));
  double gb = std::pow(2.0, 2 * beta + 3.5) * c.c_A * c.c_A * M1 * M2 +
              std::pow(2.0, beta + 1.5) * c.c_A * std::sqrt(M1 * M3);
  if (gamma_beta) *gamma_beta = gb;
  double rho = rho_max(G, x, c);
  return gb * nk2(c) * rho + 0.5 * std::log(x * x + std::sqrt(2.0) * G_prev * G_prev / gb);
}

BoundTable unconditional_pipeline(const LedgerConstants& c, const std::vector<double>& G_alphas, int alpha_max) {
  if (alpha_max < 1) throw std::invalid_argument("unconditional_pipeline: alpha_max must be >= 1");
  if (int(G_alphas.size()) < alpha_max + 1 && alpha_max > 1)
    throw std::invalid_argument("unconditional_pipeline: G_alpha sequence too short");
  const double nan_v = std::numeric_limits<double>::quiet_NaN();
  BoundTable t;
  t.mode = "unconditional";
  BoundRow r;
  r.alpha = 1;
  r.delta = c.delta1;
  r.ln_rt_sq = 2 * std::log(c.Rt1);
  r.ln_r_sq = nan_v;
  r.ln_gamma = nan_v;
  r.eps = nan_v;
  r.envelope_ln = nan_v;
  r.ln_gap_upper = r.ln_gap_lower = nan_v;
  r.G_alpha = G_alphas.size() > 1 ? G_alphas[1] : 0;
  t.rows.push_back(r);
  const double G1 = G_alphas.size() > 1 ? G_alphas[1] : 0, G2 = G_alphas.size() > 2 ? G_alphas[2] : 0;
  for (int a = 1; a < alpha_max; ++a) {
    double x = std::exp(0.5 * t.rows.back().ln_rt_sq);
    BoundRow n = r;
    n.alpha = a + 1;
    n.delta = rho_max(c.G, x, c) / std::sqrt(2.0);
    double ln_m;
    if (a + 1 == 2) {
      ln_m = ln_M2(c.G, G1, x, c);
    } else if (a + 1 == 3) {
      ln_m = ln_M3(c.G, G2, x, c);
    } else {
      double gb = 0;
      ln_m = ln_Mbeta(a + 1, c.G, G_alphas[a], G1, G2, x, c, &gb);
      n.ln_gamma = std::log(gb);
    }
    n.ln_rt_sq = 2 * ln_m;
    n.G_alpha = G_alphas[a + 1];
    t.rows.push_back(n);
  }
  return t;
}

GRegularity g_regularity(const SpectralField& g, double nu, int alpha_max, const LedgerConstants& c,
                         const BoundTable& fixed_strip) {
  GRegularity out;
  const double k0 = g.grid.kappa0;
  for (int a = 0; a <= alpha_max; ++a) {
    double ln_n = log_sobolev_norm(g, a);
    out.G_alpha.push_back(std::exp(ln_n - 2 * std::log(nu) - (a + 2) * std::log(k0)));
  }
  for (int a = 1; a <= alpha_max && a <= int(fixed_strip.rows.size()); ++a) {
    const BoundRow& r = fixed_strip.row(a);
    double ln_bound = 0.5 * r.ln_rt_sq - std::log(nu * k0 * k0 * r.delta);
    out.g_within_strip.push_back(out.G_alpha[a] == 0 || std::log(out.G_alpha[a]) <= ln_bound);
  }
  double beta3 = std::max(1024 * std::sqrt(2.0) / (pi * pi), c.c_A * c.c_A * c.Rt1 * c.Rt2);
  out.sigma_target = 2.5 * std::log(beta3);
  double n0 = sobolev_norm(g, 0), n1 = sobolev_norm(g, 1);
  out.Lambda1 = n0 > 0 ? n1 * n1 / (k0 * k0 * n0 * n0) : 0;
  out.bound_R2 = c.R2;
  out.bound_literature = std::sqrt(c.G * c.G * (2 * std::sqrt(out.Lambda1) + c.c_L * c.c_L * c.G * c.G));
  return out;
}

SigmaPipelineResult sigma_propagation(double sigma, double c0, const LedgerConstants& c, double G2) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma_propagation: sigma must be positive");
  if (c0 < 0) throw std::invalid_argument("sigma_propagation: c0 must be nonnegative");
  SigmaPipelineResult r;
  const double ln4 = std::log(4.0), s2 = std::sqrt(2.0), n = nk2(c);
  const double cA = c.c_A;
  r.sigma = sigma;
  r.c0 = c0;
  r.M1 = c.Rt1;
  r.M2 = c.Rt2;
  r.M3 = c.Rt3;
  r.delta3 = c.delta3;
  r.G2 = G2;
  const double d = c.delta3;

  r.ln_gamma3_M = std::log(27.0) + 15.5 * std::log(2.0) + 8 * std::log(c.c_L) + 2 * std::log(r.M1);
  double t = log_add(log_add(2 * std::log(r.M3) - std::log(d * n), std::log(4 * G2 * G2)),
                     std::log(s2) + r.ln_gamma3_M + 2 * std::log(r.M3));
  r.ln_M4 = std::log(8 * s2 / pi) + 0.5 * t;

  r.ln_c1 = 0.5 * std::log(c0) + 4 * sigma;
  r.ln_c2 = std::log(s2 * cA * c0) + sigma * (1 + std::pow(2 + ln4 / sigma, 2) / 8);
  r.ln_c3 = log_add(r.ln_c1, r.ln_c2);
  const double mm = 4 * cA * cA * r.M1 * r.M2 + cA * std::sqrt(r.M1 * r.M3);
  r.ln_c4 = std::log(128 / (pi * pi)) + std::log(1 / (d * n) + 1 / (d * d * n * n) + mm);
  r.ln_c5 = 8 * std::log(2.0) - 2 * std::log(pi) + 2 * r.ln_c3;

  r.sigma1 = ln4 + 2 * sigma;
  r.ln_gamma1 = log_add(2 * r.ln_M4, std::log(2.0) + r.ln_c5) - 4 * r.ln_c4 + 8 * sigma +
                (r.ln_c4 - 4 * ln4 - 8 * sigma) / (4 * r.sigma1);
  r.ln_gamma2 = log_add(r.ln_gamma1 - 5 * std::log(2.0) + ln4 * ln4 / (4 * r.sigma1) - 2 * std::log(d * n),
                        std::log(2.0) + 2 * r.ln_c3);
  r.sigma2 = std::max(3 * r.sigma1, 2 * sigma);
  r.ln_c6 = std::log(128 / (pi * pi)) + std::log(1 / (d * n) + mm);
  r.ln_c7 = 7 * std::log(2.0) - 2 * std::log(pi) + r.ln_gamma2;
  r.sigma3 = 2 * ln4 + 2 * r.sigma2;
  r.ln_gamma3 = log_add(2 * r.ln_M4, std::log(2.0) + r.ln_c7) - 4 * r.ln_c6 + 4 * r.sigma2 +
                (r.ln_c6 - 4 * ln4 - 4 * r.sigma2) / (2 * r.sigma3);
  r.alpha1 = std::max(int(std::floor((std::log(2.0) - r.ln_c4) / ln4)) + 1, 4);
  return r;
}

}  // namespace nselab
