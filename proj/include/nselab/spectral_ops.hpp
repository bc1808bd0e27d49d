#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nselab/field.hpp"

namespace nselab {

// Upper bounds for the Ladyzhenskaya and Agmon constants on the periodic box.
double ladyzhenskaya_constant();
double agmon_constant();

// Unconstrained vector coefficient table -> divergence-free field.
// Throws if the k = 0 entry is nonzero.
SpectralField leray_project(const SpectralField& v);

SpectralField apply_power(const SpectralField& u, double sigma);

// |A^{alpha/2} u| = L (sum (kappa0^2 |k|^2)^alpha |u(k)|^2)^{1/2}
double sobolev_norm(const SpectralField& u, double alpha);
// ln |A^{alpha/2} u|, -inf for the zero field; safe for large alpha.
double log_sobolev_norm(const SpectralField& u, double alpha);

// (u, v) = L^2 sum u(k) . conj(v(k))
cplx inner_product(const SpectralField& u, const SpectralField& v);
// <u, v> = L^2 sum u(k) . v(-k); coincides with (u, v) when v is real.
cplx bilinear_pairing(const SpectralField& u, const SpectralField& v);

ScalarSpectrum stream_function(const SpectralField& u);
SpectralField velocity_from_stream(const ScalarSpectrum& psi, Symmetry s = Symmetry::real);

struct LebesgueNorms {
  double L4 = 0;
  double Linf = 0;
  int grid_M = 0;
  bool l4_exact = true;  // grid_M >= 4K+1
};

// M = 0 uses the smallest friendly size >= 4K+1. Linf is the grid maximum of
// |u(x)| refined by local Newton ascent on the trigonometric polynomial.
LebesgueNorms lebesgue_norms(const SpectralField& u, int M = 0);

// Pointwise evaluation of the trigonometric polynomial.
Vec2c evaluate_at(const SpectralField& u, double x1, double x2);

// mt19937_64 output is fixed by the standard; the conversions below are done
// by hand so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi);  // inclusive
  double normal();

 private:
  std::mt19937_64 eng_;
};

// Independent stream seed for sample `index` of a run seeded with `base`
// (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// |u(k)| = |k|^{-s} exp(-|k|/k_c), random phases, divergence-free.
SpectralField random_field(const GridSpec& grid, double s, double k_c, std::uint64_t seed,
                           Symmetry sym = Symmetry::real);

enum class FieldFamily { power_law, white_in_shell, single_shell };

const char* to_string(FieldFamily f);

// Draws one member of a family with randomized parameters from rng.
SpectralField sample_family(const GridSpec& grid, FieldFamily f, Rng& rng, Symmetry sym);

// Rescale so that |A^{alpha/2} u| equals target (no-op on the zero field).
SpectralField scaled_to_norm(const SpectralField& u, double alpha, double target);

}  // namespace nselab
