#include "nselab/sigma_class.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "nselab/spectral_ops.hpp"

namespace nselab {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

struct Shell {
  double ln_lambda;  // ln of the eigenvalue in the chosen normalization
  double ln_weight;  // ln of L^2 sum |u(k)|^2 over the shell (divided by nu^2 if normalized)
};

std::vector<Shell> shells_of(const SpectralField& u, SigmaNormalization norm, double nu) {
  std::map<int, double> acc;
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    double a = std::norm(u.coeffs[i][0]) + std::norm(u.coeffs[i][1]);
    if (a > 0) acc[k1 * k1 + k2 * k2] += a;
  });
  const double k0sq = u.grid.kappa0 * u.grid.kappa0;
  const double L2 = u.grid.L * u.grid.L;
  std::vector<Shell> s;
  for (auto [k2, a] : acc) {
    if (norm == SigmaNormalization::raw)
      s.push_back({std::log(k0sq * k2), std::log(L2 * a)});
    else
      s.push_back({std::log(double(k2)), std::log(L2 * a) - 2 * std::log(nu)});
  }
  return s;
}

// ln(|A^{alpha/2}u| e^{-sigma alpha^2/2}) in the shell representation.
double objective(const std::vector<Shell>& s, double sigma, double alpha) {
  double mx = neg_inf;
  for (const auto& sh : s) mx = std::max(mx, sh.ln_weight + alpha * sh.ln_lambda);
  double acc = 0;
  for (const auto& sh : s) acc += std::exp(sh.ln_weight + alpha * sh.ln_lambda - mx);
  return 0.5 * (mx + std::log(acc)) - 0.5 * sigma * alpha * alpha;
}

void bracket(const std::vector<Shell>& s, double sigma, double& lo, double& hi) {
  double mn = INFINITY, mx = -INFINITY;
  for (const auto& sh : s) {
    mn = std::min(mn, sh.ln_lambda);
    mx = std::max(mx, sh.ln_lambda);
  }
  lo = std::max(0.0, mn / (2 * sigma));
  hi = std::max(0.0, mx / (2 * sigma));
}

std::pair<double, double> integer_sup(const std::vector<Shell>& s, double sigma) {
  double lo, hi;
  bracket(s, sigma, lo, hi);
  double best = neg_inf, arg = 0;
  for (int a = int(std::floor(lo)); a <= int(std::ceil(hi)); ++a) {
    double f = objective(s, sigma, a);
    if (f > best) {
      best = f;
      arg = a;
    }
  }
  return {best, arg};
}

std::pair<double, double> continuous_sup(const std::vector<Shell>& s, double sigma) {
  if (s.size() == 1) {
    double a = std::max(0.0, s[0].ln_lambda / (2 * sigma));
    return {0.5 * s[0].ln_weight + 0.5 * a * s[0].ln_lambda - 0.5 * sigma * a * a, a};
  }
  double lo, hi;
  bracket(s, sigma, lo, hi);
  if (hi - lo < 1e-15) return {objective(s, sigma, lo), lo};
  const int n = 1024;
  const double h = (hi - lo) / n;
  std::vector<double> f(n + 1);
  for (int i = 0; i <= n; ++i) f[i] = objective(s, sigma, lo + i * h);
  double best = neg_inf, arg = lo;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (int i = 0; i <= n; ++i) {
    bool left = i == 0 || f[i] >= f[i - 1];
    bool right = i == n || f[i] >= f[i + 1];
    if (!(left && right)) continue;
    double a = lo + std::max(0, i - 1) * h, b = lo + std::min(n, i + 1) * h;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(s, sigma, x1), f2 = objective(s, sigma, x2);
    for (int it = 0; it < 200 && b - a > 1e-14 * (1 + std::abs(b)); ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = objective(s, sigma, x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = objective(s, sigma, x1);
      }
    }
    double xm = 0.5 * (a + b);
    double cand[3] = {xm, lo + i * h, 0};
    double fv[3] = {objective(s, sigma, xm), f[i], neg_inf};
    for (int k = 0; k < 2; ++k)
      if (fv[k] > best) {
        best = fv[k];
        arg = cand[k];
      }
  }
  return {best, arg};
}

void require_sigma(double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
}

bool is_integer(double a) { return a >= 0 && a == std::floor(a); }

}  // namespace

const char* to_string(SigmaMode m) { return m == SigmaMode::integer ? "integer" : "continuous"; }
const char* to_string(SigmaNormalization n) { return n == SigmaNormalization::raw ? "raw" : "normalized"; }

NormProfile norm_profile(const SpectralField& u, const std::vector<double>& alphas, double nu) {
  NormProfile p;
  p.alphas = alphas;
  p.nu = nu;
  p.kappa0 = u.grid.kappa0;
  for (double a : alphas) p.values.push_back(sobolev_norm(u, a));
  return p;
}

SigmaNormResult c_sigma_norm(const SpectralField& u, double sigma, SigmaMode mode, SigmaNormalization norm,
                             double nu) {
  require_sigma(sigma);
  SigmaNormResult r;
  r.sigma = sigma;
  r.mode = mode;
  r.normalization = norm;
  auto s = shells_of(u, norm, nu);
  if (s.empty()) return r;
  auto [lnv, arg] = mode == SigmaMode::integer ? integer_sup(s, sigma) : continuous_sup(s, sigma);
  r.value = std::exp(lnv);
  r.argmax_alpha = arg;
  auto sn = norm == SigmaNormalization::normalized ? s : shells_of(u, SigmaNormalization::normalized, nu);
  r.c0_hat = std::exp(2 * integer_sup(sn, sigma).first);
  return r;
}

SigmaNormResult c_sigma_norm(const NormProfile& p, double sigma, SigmaMode mode, SigmaNormalization norm) {
  require_sigma(sigma);
  if (p.alphas.size() != p.values.size()) throw std::invalid_argument("profile alphas/values size mismatch");
  SigmaNormResult r;
  r.sigma = sigma;
  r.mode = mode;
  r.normalization = norm;
  double best = neg_inf, best_c0 = neg_inf;
  for (std::size_t i = 0; i < p.alphas.size(); ++i) {
    double a = p.alphas[i], v = p.values[i];
    if (v < 0 || a < 0) throw std::invalid_argument("profile entries must be nonnegative");
    if (v == 0) continue;
    double ln_norm = std::log(v) - std::log(p.nu) - a * std::log(p.kappa0);
    if (is_integer(a)) best_c0 = std::max(best_c0, 2 * ln_norm - sigma * a * a);
    if (mode == SigmaMode::integer && !is_integer(a)) continue;
    double f = (norm == SigmaNormalization::raw ? std::log(v) : ln_norm) - 0.5 * sigma * a * a;
    if (f > best) {
      best = f;
      r.argmax_alpha = a;
    }
  }
  r.value = std::exp(best);
  r.c0_hat = std::exp(best_c0);
  return r;
}

double shell_ratio(double Lambda, double sigma1, double sigma2) {
  require_sigma(sigma1);
  if (!(sigma1 < sigma2)) throw std::invalid_argument("shell_ratio needs sigma1 < sigma2");
  if (!(Lambda > 1)) throw std::invalid_argument("shell_ratio needs Lambda > 1");
  double l = std::log(Lambda);
  return std::exp((sigma2 - sigma1) * l * l / (8 * sigma1 * sigma2));
}

SigmaFit estimate_sigma(const NormProfile& p, SigmaNormalization norm) {
  if (p.alphas.size() != p.values.size()) throw std::invalid_argument("profile alphas/values size mismatch");
  std::vector<double> al, x, y;
  for (std::size_t i = 0; i < p.alphas.size(); ++i) {
    if (!(p.values[i] > 0)) continue;
    double a = p.alphas[i];
    double v = norm == SigmaNormalization::normalized ? p.values[i] / (p.nu * std::pow(p.kappa0, a)) : p.values[i];
    al.push_back(a);
    x.push_back(a * a);
    y.push_back(2 * std::log(v));
  }
  if (x.empty()) throw std::invalid_argument("degenerate profile: no positive values");
  if (x.size() < 4) throw std::invalid_argument("estimate_sigma needs at least 4 positive profile points");

  auto ols = [&](const std::vector<double>& xs, double& slope, double& icpt) {
    const double n = double(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("degenerate profile: all alphas equal");
    slope = sxy / sxx;
    icpt = my - slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double e = y[i] - (icpt + slope * xs[i]);
      rss += e * e;
    }
    return std::sqrt(rss / n);
  };

  SigmaFit f;
  f.normalization = norm;
  f.points = int(x.size());
  f.residual = ols(x, f.sigma_hat, f.ln_c0_hat);
  f.c0_hat = std::exp(f.ln_c0_hat);

  double s1, i1;
  double lin_res = ols(al, s1, i1);
  double yscale = 0;
  for (double v : y) yscale = std::max(yscale, std::abs(v));
  if (lin_res <= 1e-9 * (1 + yscale) && f.residual > 1e3 * lin_res + 1e-12 * (1 + yscale)) {
    f.degenerate = true;
    f.note = "profile is log-linear in alpha (single-shell spectrum); the alpha^2 fit does not apply";
  } else if (f.sigma_hat <= 0) {
    f.note = "nonpositive slope: profile is not growing like exp(sigma alpha^2 / 2)";
  }
  return f;
}

SpectralField gevrey_log_apply(const SpectralField& v, double a, double b, int sign) {
  if (!(a > std::exp(1.0))) throw std::invalid_argument("gevrey_log_apply: requires a > e");
  if (!(b > 0)) throw std::invalid_argument("gevrey_log_apply: requires b > 0");
  if (sign != 1 && sign != -1) throw std::invalid_argument("gevrey_log_apply: sign must be +1 or -1");
  SpectralField r = v;
  for_each_mode(v.grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    double l = std::log(std::hypot(k1, k2) + a);
    double f = std::exp(sign * b * l * l);
    r.coeffs[i][0] *= f;
    r.coeffs[i][1] *= f;
  });
  return r;
}

GevreyOpNorm gevrey_log_opnorm(double alpha, double a, double b, int K) {
  if (!(a > std::exp(1.0))) throw std::invalid_argument("gevrey_log_opnorm: requires a > e");
  if (!(b > 0)) throw std::invalid_argument("gevrey_log_opnorm: requires b > 0");
  if (K < 1) throw std::invalid_argument("gevrey_log_opnorm: K must be positive");
  GevreyOpNorm r;
  r.ln_discrete_sup = neg_inf;
  r.ln_bound = alpha * alpha / (2 * b);
  for (int k1 = 0; k1 <= K; ++k1)
    for (int k2 = k1; k2 <= K; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      double kn = std::hypot(k1, k2), l = std::log(kn + a);
      double v = 2 * alpha * std::log(kn) - 2 * b * l * l;
      if (v > r.ln_discrete_sup) {
        r.ln_discrete_sup = v;
        r.argmax_k = kn;
      }
    }
  return r;
}

}  // namespace nselab
