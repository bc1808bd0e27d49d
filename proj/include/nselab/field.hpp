#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nselab {

using cplx = std::complex<double>;
using Vec2c = std::array<cplx, 2>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

struct GridSpec {
  double L = two_pi;
  double kappa0 = 1.0;
  int K = 0;
  int M = 0;

  int side() const { return 2 * K + 1; }
  int modes() const { return side() * side(); }
  int index(int k1, int k2) const { return (k1 + K) * side() + (k2 + K); }
};

// Smallest n >= target whose prime factors are all in {2,3,5,7}.
int fft_friendly_size(int target);

// M = 0 picks the smallest friendly size >= 3K+1; see bilinear_fft.
GridSpec make_grid(int K, double L = two_pi, int M = 0);

bool same_modes(const GridSpec& a, const GridSpec& b);
void require_same_modes(const GridSpec& a, const GridSpec& b);

enum class Symmetry { real, complex };

const char* to_string(Symmetry s);

struct SpectralField {
  GridSpec grid;
  Symmetry symmetry = Symmetry::real;
  std::vector<Vec2c> coeffs;

  static SpectralField zeros(const GridSpec& grid, Symmetry s = Symmetry::real);

  Vec2c& at(int k1, int k2) { return coeffs[grid.index(k1, k2)]; }
  const Vec2c& at(int k1, int k2) const { return coeffs[grid.index(k1, k2)]; }
};

// Scalar coefficient table on the same truncation square (stream functions).
struct ScalarSpectrum {
  GridSpec grid;
  std::vector<cplx> coeffs;

  cplx& at(int k1, int k2) { return coeffs[grid.index(k1, k2)]; }
  const cplx& at(int k1, int k2) const { return coeffs[grid.index(k1, k2)]; }
};

template <class F>
void for_each_mode(const GridSpec& g, F&& f) {
  for (int k1 = -g.K; k1 <= g.K; ++k1)
    for (int k2 = -g.K; k2 <= g.K; ++k2) f(k1, k2, g.index(k1, k2));
}

// Returns an empty string when the zero-mean, divergence-free and (for real
// fields) conjugate-symmetry invariants hold to tol; otherwise a description.
std::string check_invariants(const SpectralField& u, double tol = 1e-13);
void require_invariants(const SpectralField& u, double tol = 1e-13);

// Replace u(k), u(-k) with their conjugate-symmetric average.
void symmetrize_real(SpectralField& u);
bool is_conjugate_symmetric(const SpectralField& u, double tol);

// Coefficientwise helpers.
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(cplx s, const SpectralField& a);
double max_abs_coeff(const SpectralField& u);
double max_abs_diff(const SpectralField& a, const SpectralField& b);
double ell1_coeffs(const SpectralField& u);  // sum over k of |u(k)|

}  // namespace nselab
