#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nselab/field.hpp"

namespace nselab {

// fftw_malloc'd buffer of M*M complex values.
class PhysicalBuffer {
 public:
  explicit PhysicalBuffer(int M);
  ~PhysicalBuffer();
  PhysicalBuffer(const PhysicalBuffer&) = delete;
  PhysicalBuffer& operator=(const PhysicalBuffer&) = delete;
  PhysicalBuffer(PhysicalBuffer&& o) noexcept;
  PhysicalBuffer& operator=(PhysicalBuffer&& o) noexcept;

  cplx* data() { return data_; }
  const cplx* data() const { return data_; }
  int M() const { return M_; }
  std::size_t size() const { return std::size_t(M_) * M_; }
  cplx& operator()(int i, int j) { return data_[std::size_t(i) * M_ + j]; }
  const cplx& operator()(int i, int j) const { return data_[std::size_t(i) * M_ + j]; }

 private:
  cplx* data_ = nullptr;
  int M_ = 0;
};

// Transforms between the truncation square and an M x M physical grid,
// x_j = j L / M. Plans are shared process-wide (created under a lock,
// FFTW_ESTIMATE so results are reproducible); buffers belong to the caller.
class Transform {
 public:
  explicit Transform(int M);
  int M() const { return M_; }

  // f(x_j) = sum_k c(k) exp(i kappa0 k.x_j); component in {0,1}.
  void synthesize(const SpectralField& u, int component, PhysicalBuffer& out) const;
  void synthesize(const ScalarSpectrum& s, PhysicalBuffer& out) const;
  // Generic: coefficient c(k) supplied by callback, |k_i| <= K.
  template <class F>
  void synthesize_with(int K, F&& coeff, PhysicalBuffer& out) const {
    clear(out);
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = -K; k2 <= K; ++k2) out(wrap(k1), wrap(k2)) = coeff(k1, k2);
    backward(out);
  }
  // In-place forward transform scaled by 1/M^2; afterwards out(wrap(k1),wrap(k2))
  // holds the Fourier coefficient of mode k.
  void analyze(PhysicalBuffer& buf) const;

  int wrap(int k) const { return k >= 0 ? k : k + M_; }

 private:
  void clear(PhysicalBuffer& b) const;
  void backward(PhysicalBuffer& b) const;
  int M_;
  void* fwd_;
  void* bwd_;
};

}  // namespace nselab
