#include "nselab/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nselab/transform.hpp"

namespace nselab {

double ladyzhenskaya_constant() {
  const double pi = two_pi / 2;
  return std::pow(1.0 / (4 * pi * pi) + 1.0 / (std::sqrt(2.0) * pi) + 2.0, 0.25);
}

double agmon_constant() {
  const double pi = two_pi / 2;
  return std::sqrt(1.0 / (4 * pi * pi) + 1.0 / (std::sqrt(2.0) * pi) + 2.0 + 4 * std::sqrt(2.0));
}

SpectralField leray_project(const SpectralField& v) {
  const Vec2c& m = v.at(0, 0);
  if (std::abs(m[0]) != 0 || std::abs(m[1]) != 0)
    throw std::invalid_argument("leray_project: input has a nonzero mean component");
  SpectralField u = v;
  for_each_mode(v.grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    const Vec2c& c = v.coeffs[i];
    cplx d = (double(k1) * c[0] + double(k2) * c[1]) / double(k1 * k1 + k2 * k2);
    u.coeffs[i] = Vec2c{c[0] - double(k1) * d, c[1] - double(k2) * d};
  });
  return u;
}

SpectralField apply_power(const SpectralField& u, double sigma) {
  SpectralField r = u;
  const double k0sq = u.grid.kappa0 * u.grid.kappa0;
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    double f = std::pow(k0sq * (k1 * k1 + k2 * k2), sigma);
    r.coeffs[i][0] *= f;
    r.coeffs[i][1] *= f;
  });
  return r;
}

double sobolev_norm(const SpectralField& u, double alpha) {
  const double k0sq = u.grid.kappa0 * u.grid.kappa0;
  double s = 0;
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    const Vec2c& c = u.coeffs[i];
    double a = std::norm(c[0]) + std::norm(c[1]);
    if (a == 0) return;
    s += (alpha == 0 ? 1.0 : std::pow(k0sq * (k1 * k1 + k2 * k2), alpha)) * a;
  });
  return u.grid.L * std::sqrt(s);
}

double log_sobolev_norm(const SpectralField& u, double alpha) {
  const double k0sq = u.grid.kappa0 * u.grid.kappa0;
  std::vector<double> terms;
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    const Vec2c& c = u.coeffs[i];
    double a = std::norm(c[0]) + std::norm(c[1]);
    if (a > 0) terms.push_back(alpha * std::log(k0sq * (k1 * k1 + k2 * k2)) + std::log(a));
  });
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  double mx = *std::max_element(terms.begin(), terms.end());
  double s = 0;
  for (double t : terms) s += std::exp(t - mx);
  return std::log(u.grid.L) + 0.5 * (mx + std::log(s));
}

cplx inner_product(const SpectralField& u, const SpectralField& v) {
  require_same_modes(u.grid, v.grid);
  cplx s = 0;
  for (size_t i = 0; i < u.coeffs.size(); ++i)
    s += u.coeffs[i][0] * std::conj(v.coeffs[i][0]) + u.coeffs[i][1] * std::conj(v.coeffs[i][1]);
  return u.grid.L * u.grid.L * s;
}

cplx bilinear_pairing(const SpectralField& u, const SpectralField& v) {
  require_same_modes(u.grid, v.grid);
  cplx s = 0;
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    const Vec2c& w = v.at(-k1, -k2);
    s += u.coeffs[i][0] * w[0] + u.coeffs[i][1] * w[1];
  });
  return u.grid.L * u.grid.L * s;
}

ScalarSpectrum stream_function(const SpectralField& u) {
  ScalarSpectrum psi{u.grid, std::vector<cplx>(u.grid.modes(), 0.0)};
  const cplx i_k0(0.0, u.grid.kappa0);
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    const Vec2c& c = u.coeffs[i];
    // d2 u1 - d1 u2 = Lap psi
    psi.coeffs[i] = (double(k2) * c[0] - double(k1) * c[1]) / (i_k0 * double(k1 * k1 + k2 * k2));
  });
  return psi;
}

SpectralField velocity_from_stream(const ScalarSpectrum& psi, Symmetry s) {
  SpectralField u = SpectralField::zeros(psi.grid, s);
  const cplx i_k0(0.0, psi.grid.kappa0);
  for_each_mode(psi.grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    u.coeffs[i] = Vec2c{i_k0 * double(k2) * psi.coeffs[i], -i_k0 * double(k1) * psi.coeffs[i]};
  });
  return u;
}

namespace {

struct PointEval {
  double F = 0;  // |u|^2
  double g[2] = {0, 0};
  double H[2][2] = {{0, 0}, {0, 0}};
};

PointEval eval_sq(const SpectralField& u, double x1, double x2) {
  const int K = u.grid.K;
  const double k0 = u.grid.kappa0;
  std::vector<cplx> e1(2 * K + 1), e2(2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    e1[k + K] = std::polar(1.0, k0 * k * x1);
    e2[k + K] = std::polar(1.0, k0 * k * x2);
  }
  cplx f[2] = {0, 0}, d[2][2] = {{0, 0}, {0, 0}}, dd[2][3] = {{0, 0, 0}, {0, 0, 0}};
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2) {
      const Vec2c& c = u.at(k1, k2);
      if (c[0] == 0.0 && c[1] == 0.0) continue;
      cplx e = e1[k1 + K] * e2[k2 + K];
      for (int j = 0; j < 2; ++j) {
        cplx t = c[j] * e;
        f[j] += t;
        d[j][0] += cplx(0, k0 * k1) * t;
        d[j][1] += cplx(0, k0 * k2) * t;
        dd[j][0] -= k0 * k0 * double(k1 * k1) * t;
        dd[j][1] -= k0 * k0 * double(k1 * k2) * t;
        dd[j][2] -= k0 * k0 * double(k2 * k2) * t;
      }
    }
  PointEval p;
  for (int j = 0; j < 2; ++j) {
    p.F += std::norm(f[j]);
    for (int a = 0; a < 2; ++a) p.g[a] += 2 * std::real(std::conj(f[j]) * d[j][a]);
    cplx h[2][2] = {{dd[j][0], dd[j][1]}, {dd[j][1], dd[j][2]}};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        p.H[a][b] += 2 * std::real(std::conj(d[j][b]) * d[j][a] + std::conj(f[j]) * h[a][b]);
  }
  return p;
}

double polish_max(const SpectralField& u, double x1, double x2, double h) {
  PointEval p = eval_sq(u, x1, x2);
  for (int it = 0; it < 30; ++it) {
    double det = p.H[0][0] * p.H[1][1] - p.H[0][1] * p.H[1][0];
    double s1, s2;
    if (p.H[0][0] < 0 && det > 0) {
      s1 = -(p.H[1][1] * p.g[0] - p.H[0][1] * p.g[1]) / det;
      s2 = -(-p.H[1][0] * p.g[0] + p.H[0][0] * p.g[1]) / det;
    } else {
      double gn = std::hypot(p.g[0], p.g[1]);
      if (gn == 0) break;
      s1 = h * p.g[0] / gn;
      s2 = h * p.g[1] / gn;
    }
    double sn = std::hypot(s1, s2);
    if (sn > h) {
      s1 *= h / sn;
      s2 *= h / sn;
    }
    bool moved = false;
    for (int bt = 0; bt < 20; ++bt) {
      PointEval q = eval_sq(u, x1 + s1, x2 + s2);
      if (q.F > p.F) {
        x1 += s1;
        x2 += s2;
        p = q;
        moved = true;
        break;
      }
      s1 *= 0.5;
      s2 *= 0.5;
    }
    if (!moved || std::hypot(s1, s2) < 1e-14 * u.grid.L) break;
  }
  return p.F;
}

}  // namespace

Vec2c evaluate_at(const SpectralField& u, double x1, double x2) {
  Vec2c r{0.0, 0.0};
  const double k0 = u.grid.kappa0;
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    cplx e = std::polar(1.0, k0 * (k1 * x1 + k2 * x2));
    r[0] += u.coeffs[i][0] * e;
    r[1] += u.coeffs[i][1] * e;
  });
  return r;
}

LebesgueNorms lebesgue_norms(const SpectralField& u, int M) {
  const int K = u.grid.K;
  LebesgueNorms out;
  out.grid_M = M > 0 ? M : fft_friendly_size(4 * K + 1);
  if (out.grid_M < 2 * K + 1) throw std::invalid_argument("lebesgue_norms: grid cannot hold the truncation");
  out.l4_exact = out.grid_M >= 4 * K + 1;
  Transform tr(out.grid_M);
  PhysicalBuffer a(out.grid_M), b(out.grid_M);
  tr.synthesize(u, 0, a);
  tr.synthesize(u, 1, b);
  const int n = out.grid_M;
  double s4 = 0;
  std::vector<std::pair<double, int>> best;
  for (int i = 0; i < n * n; ++i) {
    double m2 = std::norm(a.data()[i]) + std::norm(b.data()[i]);
    s4 += m2 * m2;
    best.emplace_back(m2, i);
  }
  if (s4 == 0) return out;
  const double L = u.grid.L;
  out.L4 = std::pow(L * L * s4 / (double(n) * n), 0.25);
  const int keep = std::min<int>(6, best.size());
  std::partial_sort(best.begin(), best.begin() + keep, best.end(),
                    [](auto& x, auto& y) { return x.first > y.first; });
  const double h = L / n;
  double mx = best[0].first;
  for (int c = 0; c < keep; ++c) {
    int i = best[c].second;
    mx = std::max(mx, polish_max(u, (i / n) * h, (i % n) * h, h));
  }
  out.Linf = std::sqrt(mx);
  return out;
}

int Rng::integer(int lo, int hi) {
  int v = lo + int(uniform() * (hi - lo + 1));
  return std::min(v, hi);
}

double Rng::normal() {
  double u1 = uniform(), u2 = uniform();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(two_pi * u2);
}

SpectralField scaled_to_norm(const SpectralField& u, double alpha, double target) {
  double n = sobolev_norm(u, alpha);
  if (n == 0) return u;
  return cplx(target / n) * u;
}

}  // namespace nselab
