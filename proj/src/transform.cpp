#include "nselab/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nselab {

namespace {

struct PlanPair {
  fftw_plan fwd;
  fftw_plan bwd;
};

std::mutex plan_mutex;

PlanPair& plans_for(int M) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  auto* tmp = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * M * M));
  PlanPair p;
  p.fwd = fftw_plan_dft_2d(M, M, tmp, tmp, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_2d(M, M, tmp, tmp, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(tmp);
  if (!p.fwd || !p.bwd) throw std::runtime_error("FFTW plan creation failed");
  return cache.emplace(M, p).first->second;
}

}  // namespace

PhysicalBuffer::PhysicalBuffer(int M) : M_(M) {
  data_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * std::size_t(M) * M));
  if (!data_) throw std::bad_alloc();
}

PhysicalBuffer::~PhysicalBuffer() {
  if (data_) fftw_free(data_);
}

PhysicalBuffer::PhysicalBuffer(PhysicalBuffer&& o) noexcept : data_(o.data_), M_(o.M_) {
  o.data_ = nullptr;
}

PhysicalBuffer& PhysicalBuffer::operator=(PhysicalBuffer&& o) noexcept {
  if (this != &o) {
    if (data_) fftw_free(data_);
    data_ = o.data_;
    M_ = o.M_;
    o.data_ = nullptr;
  }
  return *this;
}

Transform::Transform(int M) : M_(M) {
  if (M < 1) throw std::invalid_argument("transform size must be positive");
  PlanPair& p = plans_for(M);
  fwd_ = p.fwd;
  bwd_ = p.bwd;
}

void Transform::clear(PhysicalBuffer& b) const { std::fill(b.data(), b.data() + b.size(), cplx(0.0)); }

void Transform::backward(PhysicalBuffer& b) const {
  auto* d = reinterpret_cast<fftw_complex*>(b.data());
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), d, d);
}

void Transform::synthesize(const SpectralField& u, int component, PhysicalBuffer& out) const {
  if (out.M() != M_) throw std::invalid_argument("buffer size mismatch");
  if (2 * u.grid.K + 1 > M_) throw std::invalid_argument("transform too small for truncation");
  synthesize_with(u.grid.K, [&](int k1, int k2) { return u.at(k1, k2)[component]; }, out);
}

void Transform::synthesize(const ScalarSpectrum& s, PhysicalBuffer& out) const {
  if (out.M() != M_) throw std::invalid_argument("buffer size mismatch");
  synthesize_with(s.grid.K, [&](int k1, int k2) { return s.at(k1, k2); }, out);
}

void Transform::analyze(PhysicalBuffer& buf) const {
  if (buf.M() != M_) throw std::invalid_argument("buffer size mismatch");
  auto* d = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), d, d);
  const double s = 1.0 / (double(M_) * M_);
  for (std::size_t i = 0; i < buf.size(); ++i) buf.data()[i] *= s;
}

}  // namespace nselab
