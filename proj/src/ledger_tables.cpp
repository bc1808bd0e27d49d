#include <cmath>
#include <functional>
#include <limits>

#include "nselab/ledger.hpp"

namespace nselab {

namespace {

const double pi = two_pi / 2;
const double nan_v = std::numeric_limits<double>::quiet_NaN();

ProductResult truncated_product(int start, int cap, const std::function<double(int)>& term) {
  ProductResult p;
  for (int n = start; p.depth < cap; ++n) {
    double t = term(n);
    double l = std::log1p(t);
    p.ln_value += l;
    p.partial_ln.push_back(p.ln_value);
    p.last_term = t;
    ++p.depth;
    if (l < 1e-16) {
      p.converged = true;
      break;
    }
  }
  return p;
}

double nk2(const LedgerConstants& c) { return c.nu * c.kappa0 * c.kappa0; }

double ln_beta(const LedgerConstants& c) { return 2 * std::sqrt(2.0) * c.delta3 * nk2(c); }

// epsilon_alpha of the fixed-strip recursion (delta = delta3).
double epsilon(int a, const LedgerConstants& c, const LedgerOptions& opt) {
  const double d = c.delta3, n2 = nk2(c) * nk2(c);
  const double dp = std::pow(d, opt.eps_delta_power);
  double g = std::exp(ln_gamma_alpha(a, c)), g1 = std::exp(ln_gamma_alpha(a + 1, c));
  return 1.0 / (2 * std::sqrt(2.0) * g * d * nk2(c)) + std::sqrt(2.0) / (g * n2 * dp) +
         pi * pi / (72 * n2 * dp * g * g1);
}

double rt_prefactor(const LedgerOptions& opt) {
  return (opt.variant == RtVariant::proof ? 72.0 : 36.0) * std::sqrt(2.0) / (pi * pi);
}

std::vector<BoundRow> seed_rows(const LedgerConstants& c) {
  std::vector<BoundRow> rows(3);
  const double d[3] = {c.delta1, c.delta2, c.delta3};
  const double rt[3] = {c.Rt1, c.Rt2, c.Rt3};
  const double r[3] = {c.R1, c.R2, c.R3};
  for (int i = 0; i < 3; ++i) {
    rows[i].alpha = i + 1;
    rows[i].delta = d[i];
    rows[i].ln_rt_sq = 2 * std::log(rt[i]);
    rows[i].ln_r_sq = 2 * std::log(r[i]);
    rows[i].ln_gamma = nan_v;
    rows[i].eps = nan_v;
    rows[i].envelope_ln = nan_v;
    rows[i].ln_gap_upper = 2 * std::log(rt[i] / r[i]);
    rows[i].ln_gap_lower = i > 0 ? 2 * std::log(r[i] / rt[i - 1]) : nan_v;
  }
  rows[2].ln_gamma = ln_gamma_alpha(3, c);
  return rows;
}

double xi(int a, double da, const LedgerConstants& c) {
  const double s2 = std::sqrt(2.0), n = nk2(c), g = std::exp(ln_gamma_alpha(a, c));
  const double d1 = da / 2;
  return 1.0 / (4 * s2 * n * d1 * g) + 1.0 / (s2 * n * n * da * d1 * g);
}

}  // namespace

FixedEnvelope envelope_fixed(const LedgerConstants& c, const LedgerOptions& opt) {
  FixedEnvelope e;
  const double s2 = std::sqrt(2.0), ln2 = std::log(2.0);
  e.ln_beta = ln_beta(c);
  e.C1 = truncated_product(3, opt.product_depth_cap, [&](int a) { return epsilon(a, c, opt); });
  e.eta = truncated_product(3, opt.product_depth_cap, [&](int g) {
    return std::sqrt(c.Rt1 * c.Rt3) / (std::pow(2.0, g + 2) * c.c_A * c.Rt1 * c.Rt2);
  });
  e.ln_C2 = std::log(27.0) - 7 * ln2 + 8 * std::log(c.c_L) + 2 * std::log(c.Rt1) + e.eta.ln_value;
  e.C3 = 4 * (std::pow(2.0, 2.5) * c.c_A * c.c_A * c.Rt1 * c.Rt2 + s2 * c.c_A * std::sqrt(c.Rt1 * c.Rt3));
  e.ln_beta1 = e.C3 * e.ln_beta;
  const double k = 72 * s2 / (pi * pi), q = c.c_A * c.c_A * c.Rt1 * c.Rt2;
  e.beta2 = std::max(k, q);
  e.beta2_proof = std::max({k, 2.0, q});
  e.ln_Cg = e.C1.ln_value + e.ln_C2 + 2 * std::log(c.Rt3) - 9.5 * std::log(e.beta2);
  return e;
}

double envelope_fixed_ln(const FixedEnvelope& e, int alpha) {
  const double a1 = alpha + 1;
  return e.ln_Cg + std::pow(4.0, a1) * e.ln_beta1 + (a1 * a1 + 4.5 * a1) * std::log(e.beta2);
}

BoundTable conditional_table(const LedgerConstants& c, int alpha_max, const LedgerOptions& opt, FixedEnvelope* env) {
  if (alpha_max < 3 || alpha_max > 200) throw std::invalid_argument("conditional_table: alpha_max must be in [3, 200]");
  BoundTable t;
  t.mode = "conditional_fixed_strip";
  t.rows = seed_rows(c);
  FixedEnvelope e = envelope_fixed(c, opt);
  const double lb = ln_beta(c), d = c.delta3, n = nk2(c);
  const double ln36 = std::log(36 / (pi * pi)), lnk = std::log(rt_prefactor(opt));
  for (int a = 3; a < alpha_max; ++a) {
    const BoundRow& prev = t.rows.back();
    double lg = prev.ln_gamma, lg1 = ln_gamma_alpha(a + 1, c);
    BoundRow r;
    r.alpha = a + 1;
    r.delta = d;
    r.ln_gamma = lg1;
    r.eps = epsilon(a, c, opt);
    double bracket = log_add(log_add(-std::log(d * n), std::log(4.0) - 2 * std::log(d * n)),
                             std::log(2 * std::sqrt(2.0)) + lg);
    double step = std::exp(lg1) * lb + lnk + lg + std::log1p(r.eps);
    r.ln_r_sq = ln36 + bracket + prev.ln_rt_sq;
    r.ln_rt_sq = step + prev.ln_rt_sq;
    r.ln_gap_lower = ln36 + bracket;
    r.ln_gap_upper = step - r.ln_gap_lower;
    r.envelope_ln = envelope_fixed_ln(e, a);
    t.rows.push_back(r);
  }
  if (env) *env = e;
  return t;
}

std::vector<double> conditional_rt_sq_direct(const LedgerConstants& c, int alpha_max, const LedgerOptions& opt) {
  const double s2 = std::sqrt(2.0), d = c.delta3, n = nk2(c);
  auto gamma = [&](int a) {
    if (a == 3) return 27 * std::pow(2.0, 15.5) * std::pow(c.c_L, 8) * c.Rt1 * c.Rt1;
    return std::pow(2.0, a + 1.5) * c.c_A *
           (std::pow(2.0, a + 2) * c.c_A * c.Rt1 * c.Rt2 + std::sqrt(c.Rt1 * c.Rt3));
  };
  std::vector<double> v{c.Rt1 * c.Rt1, c.Rt2 * c.Rt2, c.Rt3 * c.Rt3};
  const double dp = std::pow(d, opt.eps_delta_power);
  for (int a = 3; a < alpha_max; ++a) {
    double g = gamma(a), g1 = gamma(a + 1);
    double eps = 1 / (2 * s2 * g * d * n) + s2 / (g * n * n * dp) + pi * pi / (72 * n * n * dp * g * g1);
    double next = std::exp(2 * s2 * d * n * g1) * rt_prefactor(opt) * g * (1 + eps) * v.back();
    if (!std::isfinite(next)) break;
    v.push_back(next);
  }
  return v;
}

std::vector<double> conditional_ln_rt_sq_summed(const LedgerConstants& c, int alpha_max, const LedgerOptions& opt) {
  std::vector<double> out{2 * std::log(c.Rt1), 2 * std::log(c.Rt2), 2 * std::log(c.Rt3)};
  const double lb = ln_beta(c), lnk = std::log(rt_prefactor(opt));
  double exp_part = 0, log_part = 0;
  for (int a = 3; a < alpha_max; ++a) {
    exp_part += std::exp(ln_gamma_alpha(a + 1, c)) * lb;
    log_part += lnk + ln_gamma_alpha(a, c) + std::log1p(epsilon(a, c, opt));
    out.push_back(out[2] + log_part + exp_part);
  }
  return out;
}

ShrinkingEnvelope envelope_shrinking(const LedgerConstants& c, const LedgerOptions& opt) {
  ShrinkingEnvelope e;
  FixedEnvelope env_fixed = envelope_fixed(c, opt);
  e.C4 = truncated_product(3, opt.c4_depth,
                           [&](int g) { return xi(g, c.delta3 * std::pow(2.0, 3 - g), c); });
  e.beta3 = std::max(1024 * std::sqrt(2.0) / (pi * pi), c.c_A * c.c_A * c.Rt1 * c.Rt2);
  e.ln_Ct = env_fixed.ln_C2 + e.C4.ln_value + 2 * std::log(c.Rt3) - 0.375 * std::log(e.beta3);
  return e;
}

double envelope_shrinking_ln(const ShrinkingEnvelope& e, int alpha) {
  const double a1 = alpha + 1;
  return e.ln_Ct + 1.5 * a1 * a1 * std::log(e.beta3);
}

BoundTable shrinking_table(const LedgerConstants& c, int alpha_max, const LedgerOptions& opt, ShrinkingEnvelope* env) {
  if (alpha_max < 3 || alpha_max > 200) throw std::invalid_argument("shrinking_table: alpha_max must be in [3, 200]");
  BoundTable t;
  t.mode = "conditional_shrinking";
  t.rows = seed_rows(c);
  ShrinkingEnvelope e = envelope_shrinking(c, opt);
  const double lnk = std::log(1024 * std::sqrt(2.0) / (pi * pi));
  for (int a = 3; a < alpha_max; ++a) {
    const BoundRow& prev = t.rows.back();
    BoundRow r;
    r.alpha = a + 1;
    r.delta = prev.delta / 2;
    r.ln_gamma = ln_gamma_alpha(a + 1, c);
    r.eps = xi(a, prev.delta, c);
    r.ln_r_sq = nan_v;
    r.ln_gap_upper = r.ln_gap_lower = nan_v;
    r.ln_rt_sq = lnk + prev.ln_gamma + std::log1p(r.eps) + prev.ln_rt_sq;
    r.envelope_ln = envelope_shrinking_ln(e, a);
    t.rows.push_back(r);
  }
  if (env) *env = e;
  return t;
}

std::vector<OrderingCheck> ordering_checks(const BoundTable& t) {
  std::vector<OrderingCheck> out;
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
    OrderingCheck o;
    o.alpha = t.rows[i].alpha;
    o.upper = t.rows[i + 1].ln_gap_upper > 0;
    o.lower = t.rows[i + 1].ln_gap_lower > 0;
    out.push_back(o);
  }
  return out;
}

Crossover compare_growth(const BoundTable& fixed, const BoundTable& shrinking) {
  Crossover x;
  std::size_t n = std::min(fixed.rows.size(), shrinking.rows.size());
  for (std::size_t i = 1; i < n; ++i) {
    x.fixed_increment.push_back(fixed.rows[i].ln_rt_sq - fixed.rows[i - 1].ln_rt_sq);
    x.shrinking_increment.push_back(shrinking.rows[i].ln_rt_sq - shrinking.rows[i - 1].ln_rt_sq);
    if (x.first_alpha_shrinking_below < 0 && fixed.rows[i].alpha >= 4 &&
        shrinking.rows[i].ln_rt_sq < fixed.rows[i].ln_rt_sq)
      x.first_alpha_shrinking_below = fixed.rows[i].alpha;
  }
  return x;
}

}  // namespace nselab
