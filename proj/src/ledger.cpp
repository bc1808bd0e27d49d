#include "nselab/ledger.hpp"

#include <cmath>
#include <limits>

#include "nselab/spectral_ops.hpp"

namespace nselab {

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

LedgerConstants base_constants(double G, double nu, double kappa0) {
  const double pi = two_pi / 2, s2 = std::sqrt(2.0);
  LedgerConstants c;
  c.nu = nu;
  c.kappa0 = kappa0;
  c.G = G;
  c.c_L = ladyzhenskaya_constant();
  c.c_A = agmon_constant();
  const double cL4 = std::pow(c.c_L, 4), cL8 = cL4 * cL4, cL16 = cL8 * cL8;
  const double nk2 = nu * kappa0 * kappa0;
  const double cc = 2 * c.c_L * c.c_L + c.c_A;

  c.standing_assumption_ok = G >= 1.0 / (c.c_L * c.c_L);
  c.delta1 = 1.0 / (16 * std::pow(24.0, 3) * cL8 * nk2 * std::pow(G, 4));
  c.Rt1 = s2 * G;
  c.R1 = G;
  c.R2 = 2137 * std::pow(G, 3) * cL4;

  double t1 = std::pow(cc, 8.0 / 3) * std::pow(c.Rt1, 8.0 / 3) * std::pow(nk2 / (8 * c.delta1 * c.delta1), 2.0 / 3);
  double t2 = std::pow(cc, 4) * c.Rt1 * c.Rt1 * c.R2 * c.R2 * nk2 * nk2;
  c.delta2 = std::min(c.delta1, (1.0 / 16) / std::sqrt(t1 + t2));
  c.delta3 = c.delta2 / 2;

  c.Rt2 = std::sqrt(3 * std::pow(s2 * 256 * std::pow(24.0, 6) * cL16, 2.0 / 3) / (4 * std::pow(cc, 4.0 / 3)) *
                        std::pow(G, 6) +
                    4 * c.R2 * c.R2);

  auto N = [&](double d) {
    return c.R2 * c.R2 + 2 * d * c.Rt1 * c.Rt1 / (c.delta1 * c.delta1 * nk2) +
           16 * cc * cc * c.Rt1 * std::pow(c.Rt2, 3) * d * nk2;
  };
  c.N2 = N(c.delta2);
  c.N3 = N(c.delta3);
  c.Rt3 = 4 * std::sqrt(c.N2) / (std::sqrt(c.delta3 * nu) * kappa0);
  c.R3 = 12 * s2 / pi * std::sqrt(c.N3 / (c.delta3 * nk2));
  return c;
}

LedgerConstants base_constants(const PhysicalSetup& s) { return base_constants(s.G, s.nu, s.grid.kappa0); }

double ln_gamma_alpha(int alpha, const LedgerConstants& c) {
  if (alpha < 3) throw std::invalid_argument("Gamma_alpha is defined for alpha >= 3");
  const double ln2 = std::log(2.0);
  if (alpha == 3) return std::log(27.0) + 15.5 * ln2 + 8 * std::log(c.c_L) + 2 * std::log(c.Rt1);
  double a = (alpha + 2) * ln2 + std::log(c.c_A * c.Rt1 * c.Rt2);
  double b = 0.5 * std::log(c.Rt1 * c.Rt3);
  return (alpha + 1.5) * ln2 + std::log(c.c_A) + log_add(a, b);
}

}  // namespace nselab
