#pragma once

#include <memory>

#include "nselab/field.hpp"

namespace nselab {

// B(u,v) = P((u.grad) v) by explicit convolution over the truncation square.
// O(K^4); used as the reference for bilinear_fft.
SpectralField bilinear_direct(const SpectralField& u, const SpectralField& v);

// Pseudospectral B(u,v) in divergence form, zero-padded to grid.M. Exact when
// M >= 3K+1 (no aliased contribution reaches |k_i| <= K); smaller M throws.
// Complex-symmetry operands give the complexified B by bilinearity. Passing
// the same object twice takes the symmetric 5-transform path.
SpectralField bilinear_fft(const SpectralField& u, const SpectralField& v);

// Nonlinear term with reusable scratch; one instance per thread.
class BilinearWorkspace {
 public:
  explicit BilinearWorkspace(const GridSpec& g);
  ~BilinearWorkspace();
  BilinearWorkspace(BilinearWorkspace&&) noexcept;
  BilinearWorkspace& operator=(BilinearWorkspace&&) noexcept;

  // out = B(u, v); out must be on the same grid.
  void apply(const SpectralField& u, const SpectralField& v, SpectralField& out);
  const GridSpec& grid() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nselab
