#pragma once

#include <string>
#include <vector>

#include "nselab/field.hpp"
#include "nselab/setup.hpp"

namespace nselab {

// Constants of the alpha = 1, 2, 3 strip bounds. All dimensionless except the
// delta (time).
struct LedgerConstants {
  double nu = 1, kappa0 = 1, G = 0;
  double c_L = 0, c_A = 0;
  double delta1 = 0, delta2 = 0, delta3 = 0;
  double R1 = 0;  // |A^{1/2}u| <= R1 nu kappa0 on the attractor, R1 = G
  double Rt1 = 0, R2 = 0, Rt2 = 0, N2 = 0, N3 = 0, Rt3 = 0, R3 = 0;
  bool standing_assumption_ok = false;  // G >= c_L^{-2}
};

LedgerConstants base_constants(double G, double nu = 1.0, double kappa0 = 1.0);
LedgerConstants base_constants(const PhysicalSetup& s);

// ln Gamma_alpha for alpha >= 3, built from Rt1, Rt2, Rt3.
double ln_gamma_alpha(int alpha, const LedgerConstants& c);

// Which prefactor the fixed-strip recursion for Rt_{alpha+1}^2 uses:
// 72 sqrt2/pi^2 as derived in the proof (default) or 36 sqrt2/pi^2 as stated.
enum class RtVariant { proof, statement };

struct LedgerOptions {
  RtVariant variant = RtVariant::proof;
  // Exponent of delta in the last term of epsilon_alpha. The derivation gives
  // delta^2; 4 reproduces the printed form.
  int eps_delta_power = 2;
  int product_depth_cap = 200;
  int c4_depth = 50;
};

// Truncated infinite product prod_{n >= start} (1 + t_n) in log form.
struct ProductResult {
  double ln_value = 0;
  int depth = 0;         // number of factors used
  bool converged = false;  // stopped because log1p(t_n) < 1e-16
  double last_term = 0;
  std::vector<double> partial_ln;  // ln of partial products
};

struct BoundRow {
  int alpha = 0;
  double delta = 0;
  double ln_rt_sq = 0;  // ln Rt_alpha^2 (or ln m_alpha^2 in unconditional mode)
  double ln_r_sq = 0;   // ln R_alpha^2, NaN when not defined
  double ln_gamma = 0;  // NaN for alpha < 3
  double eps = 0;       // epsilon_{alpha-1} / xi_{alpha-1} used to reach this row, NaN for seeds
  double G_alpha = 0;   // unconditional mode only
  double envelope_ln = 0;  // NaN when no closed form applies
  // ln Rt_alpha^2 - ln R_alpha^2 and ln R_alpha^2 - ln Rt_{alpha-1}^2, taken from
  // the per-step factors. Past alpha ~ 30 the table entries exceed 1e17 and
  // their difference is below one ulp, so orderings are judged on these.
  double ln_gap_upper = 0;
  double ln_gap_lower = 0;
};

struct BoundTable {
  std::string mode;  // conditional_fixed_strip | conditional_shrinking | unconditional
  std::vector<BoundRow> rows;  // rows[i].alpha == i + 1
  const BoundRow& row(int alpha) const { return rows.at(alpha - 1); }
};

struct FixedEnvelope {
  ProductResult C1, eta;
  double ln_C2 = 0, C3 = 0, ln_beta = 0, ln_beta1 = 0;
  double beta2 = 0, beta2_proof = 0;  // max of two vs max of three quantities
  double ln_Cg = 0;
};

struct ShrinkingEnvelope {
  ProductResult C4;
  double beta3 = 0;
  double ln_Ct = 0;
};

// Fixed strip, delta_alpha = delta3 for alpha >= 3. Envelope rows
// (closed-form bound on Rt_{alpha+1}^2) are filled for alpha+1 >= 4.
BoundTable conditional_table(const LedgerConstants& c, int alpha_max, const LedgerOptions& opt = {},
                             FixedEnvelope* env = nullptr);
// Same recursion evaluated in plain floating point; rows stop at the first
// non-finite value.
std::vector<double> conditional_rt_sq_direct(const LedgerConstants& c, int alpha_max, const LedgerOptions& opt = {});
// Closed sum: ln Rt_{a+1}^2 = ln Rt_3^2 + sum_{g=3}^{a} [Gamma_{g+1} ln beta + ln(k Gamma_g (1+eps_g))].
std::vector<double> conditional_ln_rt_sq_summed(const LedgerConstants& c, int alpha_max, const LedgerOptions& opt = {});

FixedEnvelope envelope_fixed(const LedgerConstants& c, const LedgerOptions& opt = {});
// ln of the closed-form bound for Rt_{alpha+1}^2.
double envelope_fixed_ln(const FixedEnvelope& e, int alpha);

// Shrinking strip, delta_{alpha+1} = delta_alpha / 2.
BoundTable shrinking_table(const LedgerConstants& c, int alpha_max, const LedgerOptions& opt = {},
                           ShrinkingEnvelope* env = nullptr);
ShrinkingEnvelope envelope_shrinking(const LedgerConstants& c, const LedgerOptions& opt = {});
double envelope_shrinking_ln(const ShrinkingEnvelope& e, int alpha);

// Ordering Rt_{a+1} > R_{a+1} > Rt_a per alpha.
struct OrderingCheck {
  int alpha = 0;
  bool upper = false;  // Rt_{a+1} > R_{a+1}
  bool lower = false;  // R_{a+1} > Rt_a
};
std::vector<OrderingCheck> ordering_checks(const BoundTable& fixed_strip);

// Growth comparison between the two conditional tables.
struct Crossover {
  int first_alpha_shrinking_below = -1;  // first alpha >= 4 with shrinking < fixed
  std::vector<double> fixed_increment, shrinking_increment;  // ln Rt_{a+1}^2 - ln Rt_a^2
};
Crossover compare_growth(const BoundTable& fixed, const BoundTable& shrinking);

// G_alpha = |A^{alpha/2} g| / (nu^2 kappa0^{alpha+2}) for alpha = 0..alpha_max.
struct GRegularity {
  std::vector<double> G_alpha;
  std::vector<int> g_within_strip;  // G_alpha <= Rt_alpha / (nu kappa0^2 delta_alpha), alpha >= 1
  double sigma_target = 0;      // (5/2) ln beta3, sigma reached by the shrinking envelope
  double Lambda1 = 0;           // |A^{1/2}g|^2 / (kappa0^2 |g|^2)
  double bound_R2 = 0;          // R2 (so |Au| <= R2 nu kappa0^2)
  double bound_literature = 0;       // sqrt(G^2 (2 Lambda1^{1/2} + c_L^2 G^2))
};
GRegularity g_regularity(const SpectralField& g, double nu, int alpha_max, const LedgerConstants& c,
                         const BoundTable& fixed_strip);

// Sector bounds and the unconditional pipeline.
double rho_max(double G, double x, const LedgerConstants& c);
double m1(double G, double x);
double ln_M2(double G, double G1, double x, const LedgerConstants& c);
double ln_M3(double G, double G2, double x, const LedgerConstants& c);
// beta > 3; G_prev = G_{beta-1}. Returns ln M_beta and gamma_beta.
double ln_Mbeta(int beta, double G, double G_prev, double G1, double G2, double x, const LedgerConstants& c,
                double* gamma_beta = nullptr);

// m_1 = Rt_1, delta_1; m_{a+1} = M_{a+1}(G, G_a, m_a), delta_{a+1} = rho_max(G, m_a)/sqrt2.
// G_alpha uses the nu^2 normalization; G_alphas must cover 0..alpha_max.
BoundTable unconditional_pipeline(const LedgerConstants& c, const std::vector<double>& G_alphas, int alpha_max);

struct SigmaPipelineResult {
  double sigma = 0, c0 = 0;
  double M1 = 0, M2 = 0, M3 = 0, ln_M4 = 0, delta3 = 0, G2 = 0;
  double ln_gamma3_M = 0;  // M-based Gamma_3
  double ln_c1 = 0, ln_c2 = 0, ln_c3 = 0, ln_c4 = 0, ln_c5 = 0, ln_c6 = 0, ln_c7 = 0;
  double sigma1 = 0, sigma2 = 0, sigma3 = 0;
  double ln_gamma1 = 0, ln_gamma2 = 0, ln_gamma3 = 0;
  int alpha1 = 0;
};
// M1..M3 and delta3 taken from the conditional constants (Rt1..Rt3).
SigmaPipelineResult sigma_propagation(double sigma, double c0, const LedgerConstants& c, double G2);

// ln(e^a + e^b) without overflow.
double log_add(double a, double b);

}  // namespace nselab
