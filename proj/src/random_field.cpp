#include <cmath>

#include "nselab/spectral_ops.hpp"

namespace nselab {

namespace {

// Fill a divergence-free field from scalar amplitudes along k_perp/|k|.
// amp(k1,k2) returns a complex scalar; for real symmetry it is only queried on
// the half plane and mirrored.
template <class A>
SpectralField build(const GridSpec& grid, Symmetry sym, A&& amp) {
  SpectralField u = SpectralField::zeros(grid, sym);
  for_each_mode(grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    bool upper = k1 > 0 || (k1 == 0 && k2 > 0);
    if (sym == Symmetry::real && !upper) return;
    double kn = std::hypot(k1, k2);
    cplx c = amp(k1, k2);
    u.coeffs[i] = Vec2c{-c * (k2 / kn), c * (k1 / kn)};
    if (sym == Symmetry::real) {
      const Vec2c& v = u.coeffs[i];
      u.at(-k1, -k2) = Vec2c{std::conj(v[0]), std::conj(v[1])};
    }
  });
  return u;
}

}  // namespace

SpectralField random_field(const GridSpec& grid, double s, double k_c, std::uint64_t seed, Symmetry sym) {
  if (s < 0) throw std::invalid_argument("random_field: spectrum slope must be >= 0");
  if (!(k_c > 0)) throw std::invalid_argument("random_field: cutoff must be positive");
  Rng rng(seed);
  return build(grid, sym, [&](int k1, int k2) {
    double kn = std::hypot(k1, k2);
    return std::polar(std::pow(kn, -s) * std::exp(-kn / k_c), two_pi * rng.uniform());
  });
}

const char* to_string(FieldFamily f) {
  switch (f) {
    case FieldFamily::power_law: return "power_law";
    case FieldFamily::white_in_shell: return "white_in_shell";
    case FieldFamily::single_shell: return "single_shell";
  }
  return "?";
}

SpectralField sample_family(const GridSpec& grid, FieldFamily f, Rng& rng, Symmetry sym) {
  const int K = grid.K;
  switch (f) {
    case FieldFamily::power_law: {
      double s = rng.uniform(0.0, 4.0);
      double kc = rng.uniform(1.0, 2.0 * K);
      return build(grid, sym, [&](int k1, int k2) {
        double kn = std::hypot(k1, k2);
        return std::polar(std::pow(kn, -s) * std::exp(-kn / kc) * rng.uniform(0.5, 1.5), two_pi * rng.uniform());
      });
    }
    case FieldFamily::white_in_shell: {
      double lo = rng.uniform(1.0, 0.9 * K);
      double hi = lo + rng.uniform(0.5, 4.0);
      int a1 = rng.integer(1, K), a2 = rng.integer(0, K);  // guarantees a nonempty shell
      double anchor = std::hypot(a1, a2);
      if (anchor < lo || anchor > hi) {
        lo = std::min(lo, anchor);
        hi = std::max(hi, anchor);
      }
      return build(grid, sym, [&](int k1, int k2) {
        double kn = std::hypot(k1, k2);
        if (kn < lo || kn > hi) return cplx(0.0);
        return std::polar(rng.uniform(), two_pi * rng.uniform());
      });
    }
    case FieldFamily::single_shell: {
      int a1 = rng.integer(0, K), a2 = rng.integer(1, K);
      int shell = a1 * a1 + a2 * a2;
      return build(grid, sym, [&](int k1, int k2) {
        if (k1 * k1 + k2 * k2 != shell) return cplx(0.0);
        return std::polar(rng.uniform(0.1, 1.0), two_pi * rng.uniform());
      });
    }
  }
  throw std::invalid_argument("unknown field family");
}

}  // namespace nselab
