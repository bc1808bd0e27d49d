#include "nselab/setup.hpp"

#include <cmath>

#include "nselab/spectral_ops.hpp"

namespace nselab {

double grashof(const SpectralField& g, double nu) {
  const double k0 = g.grid.kappa0;
  return sobolev_norm(g, 0) / (nu * nu * k0 * k0);
}

PhysicalSetup make_setup(const SpectralField& g, double nu) {
  if (!(nu > 0)) throw std::invalid_argument("viscosity must be positive");
  if (g.symmetry != Symmetry::real) throw std::invalid_argument("force must be a real field");
  require_invariants(g, 1e-12);
  PhysicalSetup s;
  s.grid = g.grid;
  s.nu = nu;
  s.g = g;
  s.G = grashof(g, nu);
  const double cL = ladyzhenskaya_constant();
  s.single_point_regime = s.G < 1.0 / (cL * cL);
  return s;
}

SpectralField kolmogorov_force(const GridSpec& grid, int kf, double G, double nu) {
  if (kf < 1 || kf > grid.K) throw std::invalid_argument("forcing wavenumber must lie in [1, K]");
  if (G < 0) throw std::invalid_argument("Grashof number must be nonnegative");
  const double k0 = grid.kappa0;
  const double gamma = std::sqrt(2.0) * G * nu * nu * k0 * k0 / grid.L;
  SpectralField g = SpectralField::zeros(grid, Symmetry::real);
  g.at(0, kf) = Vec2c{cplx(0, -0.5 * gamma), 0.0};
  g.at(0, -kf) = Vec2c{cplx(0, 0.5 * gamma), 0.0};
  return g;
}

SpectralField scale_to_grashof(const SpectralField& g, double G, double nu) {
  double G0 = grashof(g, nu);
  if (G0 == 0) {
    if (G == 0) return g;
    throw std::invalid_argument("cannot rescale a zero force to positive Grashof number");
  }
  return cplx(G / G0) * g;
}

}  // namespace nselab
