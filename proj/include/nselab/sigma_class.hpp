#pragma once

#include <string>
#include <vector>

#include "nselab/field.hpp"

namespace nselab {

// alpha -> |A^{alpha/2}u|. nu and kappa0 are used by the normalized form.
struct NormProfile {
  std::vector<double> alphas;
  std::vector<double> values;
  double nu = 1.0;
  double kappa0 = 1.0;
};

NormProfile norm_profile(const SpectralField& u, const std::vector<double>& alphas, double nu = 1.0);

enum class SigmaMode { integer, continuous };
// raw: sup |A^{alpha/2}u| e^{-sigma alpha^2/2}.
// normalized: the same with |A^{alpha/2}u| / (nu kappa0^alpha).
enum class SigmaNormalization { raw, normalized };

const char* to_string(SigmaMode m);
const char* to_string(SigmaNormalization n);

struct SigmaNormResult {
  double sigma = 0;
  SigmaMode mode = SigmaMode::integer;
  SigmaNormalization normalization = SigmaNormalization::raw;
  double value = 0;
  double argmax_alpha = 0;
  // inf c0 with |A^{alpha/2}u|^2 / (nu^2 kappa0^{2 alpha}) <= c0 e^{sigma alpha^2}, alpha in N.
  double c0_hat = 0;
};

// Integer mode: sup over alpha in {0, 1, 2, ...}. Continuous mode: sup over
// real alpha >= 0 (closed form for a single shell, otherwise a bracketing
// scan refined by golden section).
SigmaNormResult c_sigma_norm(const SpectralField& u, double sigma, SigmaMode mode,
                             SigmaNormalization norm = SigmaNormalization::raw, double nu = 1.0);
// Sup over the alphas present in the profile (integer mode keeps only integer alphas).
SigmaNormResult c_sigma_norm(const NormProfile& p, double sigma, SigmaMode mode,
                             SigmaNormalization norm = SigmaNormalization::raw);

// exp((sigma2 - sigma1) (ln Lambda)^2 / (8 sigma1 sigma2))
double shell_ratio(double Lambda, double sigma1, double sigma2);

struct SigmaFit {
  double sigma_hat = 0;
  double c0_hat = 0;
  double ln_c0_hat = 0;
  double residual = 0;  // RMS of the alpha^2 fit
  int points = 0;
  SigmaNormalization normalization = SigmaNormalization::normalized;
  // Profile is log-linear in alpha (single shell): the alpha^2 model does not
  // describe it and the fitted sigma is not meaningful.
  bool degenerate = false;
  std::string note;
};

// OLS of 2 ln(value / (nu kappa0^alpha)) (or 2 ln value in raw mode) on alpha^2.
SigmaFit estimate_sigma(const NormProfile& p, SigmaNormalization norm = SigmaNormalization::normalized);

// Multiplies mode k by exp(sign b (ln(|k| + a))^2). Requires a > e, b > 0.
SpectralField gevrey_log_apply(const SpectralField& v, double a, double b, int sign);

struct GevreyOpNorm {
  double ln_discrete_sup = 0;  // ln max_{0 < |k|, max|k_i| <= K} |k|^{2 alpha} e^{-2b (ln(|k|+a))^2}
  double ln_bound = 0;         // alpha^2 / (2b)
  double argmax_k = 0;         // |k| at the maximum
  bool within_bound() const { return ln_discrete_sup <= ln_bound; }
};
GevreyOpNorm gevrey_log_opnorm(double alpha, double a, double b, int K);

}  // namespace nselab
