#include "nselab/bilinear.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "nselab/transform.hpp"

namespace nselab {

namespace {

Symmetry result_symmetry(const SpectralField& u, const SpectralField& v) {
  return u.symmetry == Symmetry::real && v.symmetry == Symmetry::real ? Symmetry::real : Symmetry::complex;
}

// In-place Leray projection with the mean mode cleared.
void project(SpectralField& w) {
  w.at(0, 0) = Vec2c{0.0, 0.0};
  for_each_mode(w.grid, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    Vec2c& c = w.coeffs[i];
    cplx d = (double(k1) * c[0] + double(k2) * c[1]) / double(k1 * k1 + k2 * k2);
    c[0] -= double(k1) * d;
    c[1] -= double(k2) * d;
  });
}

}  // namespace

SpectralField bilinear_direct(const SpectralField& u, const SpectralField& v) {
  require_same_modes(u.grid, v.grid);
  const int K = u.grid.K;
  const cplx ik0(0.0, u.grid.kappa0);
  SpectralField w = SpectralField::zeros(u.grid, result_symmetry(u, v));
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    cplx s0 = 0, s1 = 0;
    for (int h1 = std::max(-K, k1 - K); h1 <= std::min(K, k1 + K); ++h1)
      for (int h2 = std::max(-K, k2 - K); h2 <= std::min(K, k2 + K); ++h2) {
        const Vec2c& a = u.at(h1, h2);
        int j1 = k1 - h1, j2 = k2 - h2;
        cplx adj = a[0] * double(j1) + a[1] * double(j2);
        if (adj == 0.0) continue;
        const Vec2c& b = v.at(j1, j2);
        s0 += adj * b[0];
        s1 += adj * b[1];
      }
    w.coeffs[i] = Vec2c{ik0 * s0, ik0 * s1};
  });
  project(w);
  return w;
}

struct BilinearWorkspace::Impl {
  GridSpec grid;
  Transform tr;
  PhysicalBuffer u1, u2, v1, v2, p, q;
  explicit Impl(const GridSpec& g)
      : grid(g), tr(g.M), u1(g.M), u2(g.M), v1(g.M), v2(g.M), p(g.M), q(g.M) {}
};

BilinearWorkspace::BilinearWorkspace(const GridSpec& g) {
  if (g.M < 3 * g.K + 1)
    throw std::invalid_argument("insufficient padding: bilinear_fft needs M >= 3K+1 for exact products");
  impl_ = std::make_unique<Impl>(g);
}
BilinearWorkspace::~BilinearWorkspace() = default;
BilinearWorkspace::BilinearWorkspace(BilinearWorkspace&&) noexcept = default;
BilinearWorkspace& BilinearWorkspace::operator=(BilinearWorkspace&&) noexcept = default;
const GridSpec& BilinearWorkspace::grid() const { return impl_->grid; }

void BilinearWorkspace::apply(const SpectralField& u, const SpectralField& v, SpectralField& out) {
  Impl& w = *impl_;
  require_same_modes(u.grid, w.grid);
  require_same_modes(v.grid, w.grid);
  const int n = w.grid.M, K = w.grid.K;
  const std::size_t N = std::size_t(n) * n;
  const Transform& tr = w.tr;
  const cplx ik0(0.0, w.grid.kappa0);
  out.grid = u.grid;
  out.symmetry = result_symmetry(u, v);
  out.coeffs.assign(w.grid.modes(), Vec2c{0.0, 0.0});

  tr.synthesize(u, 0, w.u1);
  tr.synthesize(u, 1, w.u2);
  // B_i(k) = i kappa0 sum_j k_j F[u_j v_i](k), then projected.
  auto accumulate = [&](PhysicalBuffer& prod, int comp, int dir) {
    tr.analyze(prod);
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = -K; k2 <= K; ++k2)
        out.at(k1, k2)[comp] += ik0 * double(dir == 0 ? k1 : k2) * prod(tr.wrap(k1), tr.wrap(k2));
  };
  if (&u == &v) {
    cplx *a = w.u1.data(), *b = w.u2.data(), *p = w.p.data(), *q = w.q.data();
    for (std::size_t i = 0; i < N; ++i) p[i] = a[i] * a[i];
    accumulate(w.p, 0, 0);
    for (std::size_t i = 0; i < N; ++i) p[i] = a[i] * b[i];
    for (std::size_t i = 0; i < N; ++i) q[i] = b[i] * b[i];
    accumulate(w.q, 1, 1);
    // u1 u2 feeds both components.
    tr.analyze(w.p);
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = -K; k2 <= K; ++k2) {
        cplx c = w.p(tr.wrap(k1), tr.wrap(k2));
        Vec2c& o = out.at(k1, k2);
        o[0] += ik0 * double(k2) * c;
        o[1] += ik0 * double(k1) * c;
      }
  } else {
    tr.synthesize(v, 0, w.v1);
    tr.synthesize(v, 1, w.v2);
    const cplx *a = w.u1.data(), *b = w.u2.data();
    for (int comp = 0; comp < 2; ++comp) {
      const cplx* c = (comp == 0 ? w.v1 : w.v2).data();
      cplx *p = w.p.data(), *q = w.q.data();
      for (std::size_t i = 0; i < N; ++i) {
        p[i] = a[i] * c[i];
        q[i] = b[i] * c[i];
      }
      accumulate(w.p, comp, 0);
      accumulate(w.q, comp, 1);
    }
  }
  project(out);
}

SpectralField bilinear_fft(const SpectralField& u, const SpectralField& v) {
  require_same_modes(u.grid, v.grid);
  thread_local std::map<std::tuple<int, int, double>, BilinearWorkspace> cache;
  auto key = std::make_tuple(u.grid.K, u.grid.M, u.grid.L);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, BilinearWorkspace(u.grid)).first;
  SpectralField out;
  it->second.apply(u, &u == &v ? u : v, out);
  return out;
}

}  // namespace nselab
