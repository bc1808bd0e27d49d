#include "nselab/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nselab {

int fft_friendly_size(int target) {
  for (int n = std::max(target, 1);; ++n) {
    int m = n;
    for (int p : {2, 3, 5, 7})
      while (m % p == 0) m /= p;
    if (m == 1) return n;
  }
}

GridSpec make_grid(int K, double L, int M) {
  if (K < 1) throw std::invalid_argument("truncation radius K must be >= 1");
  if (!(L > 0) || !std::isfinite(L)) throw std::invalid_argument("box length L must be positive");
  GridSpec g;
  g.K = K;
  g.L = L;
  g.kappa0 = two_pi / L;
  g.M = M > 0 ? M : fft_friendly_size(3 * K + 1);
  if (g.M < 2 * K + 1) throw std::invalid_argument("padded size M must be >= 2K+1");
  return g;
}

bool same_modes(const GridSpec& a, const GridSpec& b) { return a.K == b.K && a.L == b.L; }

void require_same_modes(const GridSpec& a, const GridSpec& b) {
  if (!same_modes(a, b)) throw std::invalid_argument("grid mismatch between operands");
}

const char* to_string(Symmetry s) { return s == Symmetry::real ? "real" : "complex"; }

SpectralField SpectralField::zeros(const GridSpec& grid, Symmetry s) {
  SpectralField f;
  f.grid = grid;
  f.symmetry = s;
  f.coeffs.assign(grid.modes(), Vec2c{0.0, 0.0});
  return f;
}

static double vnorm(const Vec2c& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

std::string check_invariants(const SpectralField& u, double tol) {
  const GridSpec& g = u.grid;
  if (static_cast<int>(u.coeffs.size()) != g.modes()) return "coefficient table has wrong size";
  double scale = max_abs_coeff(u);
  std::ostringstream err;
  if (vnorm(u.at(0, 0)) > 0) err << "nonzero mean; ";
  for_each_mode(g, [&](int k1, int k2, int i) {
    const Vec2c& c = u.coeffs[i];
    if (!std::isfinite(c[0].real()) || !std::isfinite(c[0].imag()) || !std::isfinite(c[1].real()) ||
        !std::isfinite(c[1].imag()))
      err << "non-finite coefficient at (" << k1 << "," << k2 << "); ";
    if (k1 == 0 && k2 == 0) return;
    double kn = std::hypot(k1, k2);
    double div = std::abs(double(k1) * c[0] + double(k2) * c[1]);
    if (div > tol * std::max(vnorm(c), scale * 1e-3) * kn + 1e-300)
      err << "divergence at (" << k1 << "," << k2 << "); ";
  });
  if (u.symmetry == Symmetry::real && !is_conjugate_symmetric(u, tol)) err << "conjugate symmetry broken; ";
  return err.str();
}

void require_invariants(const SpectralField& u, double tol) {
  std::string e = check_invariants(u, tol);
  if (!e.empty()) throw std::invalid_argument("field invariant violated: " + e);
}

void symmetrize_real(SpectralField& u) {
  const GridSpec& g = u.grid;
  for (int k1 = 0; k1 <= g.K; ++k1)
    for (int k2 = -g.K; k2 <= g.K; ++k2) {
      if (k1 == 0 && k2 < 0) continue;
      Vec2c& a = u.at(k1, k2);
      Vec2c& b = u.at(-k1, -k2);
      for (int c = 0; c < 2; ++c) {
        cplx m = 0.5 * (a[c] + std::conj(b[c]));
        a[c] = m;
        b[c] = std::conj(m);
      }
    }
  u.at(0, 0) = Vec2c{0.0, 0.0};
  u.symmetry = Symmetry::real;
}

bool is_conjugate_symmetric(const SpectralField& u, double tol) {
  double scale = max_abs_coeff(u);
  bool ok = true;
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    const Vec2c& a = u.coeffs[i];
    const Vec2c& b = u.at(-k1, -k2);
    for (int c = 0; c < 2; ++c)
      if (std::abs(a[c] - std::conj(b[c])) > tol * scale) ok = false;
  });
  return ok;
}

static Symmetry combine(Symmetry a, Symmetry b) {
  return a == Symmetry::real && b == Symmetry::real ? Symmetry::real : Symmetry::complex;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_modes(a.grid, b.grid);
  SpectralField r = a;
  r.symmetry = combine(a.symmetry, b.symmetry);
  for (size_t i = 0; i < r.coeffs.size(); ++i)
    for (int c = 0; c < 2; ++c) r.coeffs[i][c] += b.coeffs[i][c];
  return r;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_modes(a.grid, b.grid);
  SpectralField r = a;
  r.symmetry = combine(a.symmetry, b.symmetry);
  for (size_t i = 0; i < r.coeffs.size(); ++i)
    for (int c = 0; c < 2; ++c) r.coeffs[i][c] -= b.coeffs[i][c];
  return r;
}

SpectralField operator*(cplx s, const SpectralField& a) {
  SpectralField r = a;
  if (s.imag() != 0) r.symmetry = Symmetry::complex;
  for (auto& v : r.coeffs)
    for (auto& x : v) x *= s;
  return r;
}

double max_abs_coeff(const SpectralField& u) {
  double m = 0;
  for (const auto& v : u.coeffs) m = std::max(m, vnorm(v));
  return m;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  require_same_modes(a.grid, b.grid);
  double m = 0;
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    m = std::max(m, vnorm(Vec2c{a.coeffs[i][0] - b.coeffs[i][0], a.coeffs[i][1] - b.coeffs[i][1]}));
  return m;
}

double ell1_coeffs(const SpectralField& u) {
  double s = 0;
  for (const auto& v : u.coeffs) s += vnorm(v);
  return s;
}

}  // namespace nselab
