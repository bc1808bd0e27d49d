#pragma once

#include "nselab/field.hpp"

namespace nselab {

struct PhysicalSetup {
  GridSpec grid;
  double nu = 1.0;
  SpectralField g;   // real symmetry
  double G = 0;      // |g| / (nu^2 kappa0^2)
  bool single_point_regime = false;  // G < c_L^{-2}
};

double grashof(const SpectralField& g, double nu);

// Validates g (real, divergence-free, zero mean) and derives G and the flag.
PhysicalSetup make_setup(const SpectralField& g, double nu);

// g = gamma (sin(kappa0 kf x2), 0) with gamma chosen so that the Grashof
// number equals G.
SpectralField kolmogorov_force(const GridSpec& grid, int kf, double G, double nu);

// Rescales g to Grashof number G (g must be nonzero unless G = 0).
SpectralField scale_to_grashof(const SpectralField& g, double G, double nu);

}  // namespace nselab
