#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "nselab/field_io.hpp"
#include "nselab/spectral_ops.hpp"

using namespace nselab;

namespace {

const double pi = two_pi / 2;

SpectralField rand_complex(const GridSpec& g, std::uint64_t seed) {
  Rng rng(seed);
  SpectralField u = SpectralField::zeros(g, Symmetry::complex);
  for_each_mode(g, [&](int k1, int k2, int i) {
    if (k1 == 0 && k2 == 0) return;
    cplx c(rng.normal(), rng.normal());
    double kn = std::hypot(k1, k2);
    u.coeffs[i] = Vec2c{-c * (k2 / kn), c * (k1 / kn)};
  });
  return u;
}

}  // namespace

TEST_CASE("grid: kappa0 L = 2 pi and padding default") {
  for (double L : {two_pi, 1.0, 10.0}) {
    GridSpec g = make_grid(8, L);
    CHECK(std::abs(g.kappa0 * g.L - two_pi) < 1e-15 * two_pi);
    CHECK(g.M >= 3 * 8 + 1);
  }
  CHECK_THROWS(make_grid(8, two_pi, 10));
}

TEST_CASE("leray_project") {
  GridSpec g = make_grid(4);
  SUBCASE("gradient of cos(kappa0 x1) projects to zero") {
    SpectralField v = SpectralField::zeros(g, Symmetry::real);
    // grad cos(x1) = (-sin x1, 0)
    v.at(1, 0) = Vec2c{cplx(0, 0.5), 0.0};
    v.at(-1, 0) = Vec2c{cplx(0, -0.5), 0.0};
    CHECK(max_abs_coeff(leray_project(v)) == 0.0);
  }
  SUBCASE("divergence-free input unchanged") {
    SpectralField u = random_field(g, 1.0, 3.0, 11);
    CHECK(max_abs_diff(leray_project(u), u) <= 1e-15);
  }
  SUBCASE("random raw field, per-mode formula") {
    Rng rng(5);
    SpectralField v = SpectralField::zeros(g, Symmetry::complex);
    for (auto& c : v.coeffs) c = Vec2c{cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal())};
    v.at(0, 0) = Vec2c{0.0, 0.0};
    SpectralField u = leray_project(v);
    for (int k1 = -4; k1 <= 4; ++k1)
      for (int k2 = -4; k2 <= 4; ++k2) {
        if (!k1 && !k2) continue;
        Vec2c a = v.at(k1, k2);
        cplx dot = double(k1) * a[0] + double(k2) * a[1];
        double n2 = k1 * k1 + k2 * k2;
        cplx e0 = a[0] - double(k1) * dot / n2, e1 = a[1] - double(k2) * dot / n2;
        CHECK(std::abs(u.at(k1, k2)[0] - e0) < 1e-14);
        CHECK(std::abs(u.at(k1, k2)[1] - e1) < 1e-14);
        CHECK(std::abs(double(k1) * u.at(k1, k2)[0] + double(k2) * u.at(k1, k2)[1]) < 1e-13 * std::sqrt(n2));
      }
  }
  SUBCASE("nonzero mean rejected") {
    SpectralField v = SpectralField::zeros(g, Symmetry::complex);
    v.at(0, 0) = Vec2c{1.0, 0.0};
    CHECK_THROWS_AS(leray_project(v), std::invalid_argument);
  }
}

TEST_CASE("apply_power") {
  GridSpec g = make_grid(4);
  SpectralField u = SpectralField::zeros(g, Symmetry::real);
  u.at(2, 0) = Vec2c{0.0, cplx(1, 2)};
  u.at(-2, 0) = Vec2c{0.0, cplx(1, -2)};
  SpectralField a = apply_power(u, 1);
  CHECK(a.at(2, 0)[1] == cplx(4, 8));
  CHECK(max_abs_diff(apply_power(u, 0), u) == 0.0);

  SpectralField r = random_field(g, 1.0, 2.0, 3);
  CHECK(max_abs_diff(apply_power(apply_power(r, 0.5), 0.5), apply_power(r, 1)) <= 1e-14 * max_abs_coeff(apply_power(r, 1)));
  CHECK(max_abs_diff(apply_power(apply_power(r, 0.3), 1.2), apply_power(r, 1.5)) <=
        1e-13 * max_abs_coeff(apply_power(r, 1.5)));
  SpectralField s = random_field(g, 0.5, 2.0, 4);
  cplx lhs = inner_product(apply_power(r, 0.7), s), rhs = inner_product(r, apply_power(s, 0.7));
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
}

TEST_CASE("sobolev_norm and Parseval") {
  GridSpec g = make_grid(6, 3.0);
  SpectralField u = SpectralField::zeros(g, Symmetry::real);
  cplx c(0.3, -0.4);
  // (1, 1) with a vector orthogonal to k
  u.at(1, 1) = Vec2c{c, -c};
  u.at(-1, -1) = Vec2c{std::conj(c), -std::conj(c)};
  CHECK(sobolev_norm(u, 0) == doctest::Approx(g.L * std::sqrt(2.0) * std::abs(c) * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sobolev_norm(SpectralField::zeros(g), 3) == 0.0);

  for (int s = 0; s < 1000; ++s) {
    SpectralField r = random_field(g, 1.0 + (s % 4) * 0.5, 1.0 + s % 5, 100 + s);
    double sum = 0;
    for (const auto& v : r.coeffs) sum += std::norm(v[0]) + std::norm(v[1]);
    double n0 = sobolev_norm(r, 0);
    REQUIRE(std::abs(n0 * n0 - g.L * g.L * sum) <= 1e-13 * n0 * n0);
    for (int a = 0; a < 6; ++a) REQUIRE(sobolev_norm(r, a + 1) >= g.kappa0 * sobolev_norm(r, a) * (1 - 1e-15));
  }
}

TEST_CASE("log_sobolev_norm matches for moderate alpha") {
  SpectralField r = random_field(make_grid(8), 1.0, 3.0, 9);
  for (double a : {0.0, 1.0, 2.5, 7.0}) CHECK(std::exp(log_sobolev_norm(r, a)) == doctest::Approx(sobolev_norm(r, a)).epsilon(1e-13));
  CHECK(std::isinf(log_sobolev_norm(SpectralField::zeros(make_grid(3)), 1)));
}

TEST_CASE("inner product") {
  GridSpec g = make_grid(5);
  SpectralField u = rand_complex(g, 1), v = rand_complex(g, 2);
  double n = sobolev_norm(u, 0);
  CHECK(std::abs(inner_product(u, u) - cplx(n * n)) <= 1e-13 * n * n);
  CHECK(std::abs(inner_product(u, v) - std::conj(inner_product(v, u))) <= 1e-13 * std::abs(inner_product(u, v)));
  SpectralField a = SpectralField::zeros(g, Symmetry::complex), b = a;
  a.at(1, 0) = Vec2c{0.0, 1.0};
  b.at(0, 1) = Vec2c{1.0, 0.0};
  CHECK(inner_product(a, b) == cplx(0.0));
  SpectralField r = random_field(g, 1, 2, 3), s = random_field(g, 1, 2, 4);
  CHECK(std::abs(bilinear_pairing(r, s) - inner_product(r, s)) <= 1e-13 * std::abs(inner_product(r, s)));
}

TEST_CASE("stream function") {
  GridSpec g = make_grid(4);
  ScalarSpectrum psi{g, std::vector<cplx>(g.modes(), 0.0)};
  // psi = sin(kappa0 x1)
  psi.at(1, 0) = cplx(0, -0.5);
  psi.at(-1, 0) = cplx(0, 0.5);
  SpectralField u = velocity_from_stream(psi);
  // expected u = (0, -cos x1)
  CHECK(std::abs(u.at(1, 0)[0]) == 0.0);
  CHECK(std::abs(u.at(1, 0)[1] - cplx(-0.5, 0)) < 1e-16);
  CHECK(std::abs(u.at(-1, 0)[1] - cplx(-0.5, 0)) < 1e-16);
  for (double x : {0.0, 0.7, 2.0}) {
    Vec2c p = evaluate_at(u, x, 1.3);
    CHECK(std::abs(p[1] - (-std::cos(x))) < 1e-15);
  }
  SpectralField r = random_field(make_grid(8), 1.0, 3.0, 21);
  CHECK(max_abs_diff(velocity_from_stream(stream_function(r)), r) <= 1e-14 * max_abs_coeff(r));
  SpectralField z = SpectralField::zeros(g);
  CHECK(max_abs_coeff(velocity_from_stream(stream_function(z))) == 0.0);
}

TEST_CASE("lebesgue norms") {
  GridSpec g = make_grid(4);
  SUBCASE("single mode pair, dense scan oracle") {
    SpectralField u = SpectralField::zeros(g, Symmetry::real);
    cplx c(0.2, 0.7);
    double kn = std::sqrt(5.0);
    u.at(1, 2) = Vec2c{-c * (2 / kn), c * (1 / kn)};
    u.at(-1, -2) = Vec2c{std::conj(u.at(1, 2)[0]), std::conj(u.at(1, 2)[1])};
    double scan = 0;
    const int n = 400;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec2c p = evaluate_at(u, two_pi * i / n, two_pi * j / n);
        scan = std::max(scan, std::sqrt(std::norm(p[0]) + std::norm(p[1])));
      }
    LebesgueNorms ln = lebesgue_norms(u);
    CHECK(ln.Linf >= scan * (1 - 1e-12));
    CHECK(ln.Linf <= scan * (1 + 1e-4));
  }
  SUBCASE("Ladyzhenskaya ratio on random real fields") {
    const double cL = std::pow(1 / (4 * pi * pi) + 1 / (std::sqrt(2.0) * pi) + 2, 0.25);
    CHECK(cL == doctest::Approx(1.22480).epsilon(1e-5));
    double worst = 0;
    GridSpec g6 = make_grid(6);
    for (int s = 0; s < 1000; ++s) {
      Rng rng(derive_seed(77, s));
      SpectralField u = sample_family(g6, FieldFamily(s % 3), rng, Symmetry::real);
      double r = lebesgue_norms(u).L4 / std::sqrt(sobolev_norm(u, 0) * sobolev_norm(u, 1));
      worst = std::max(worst, r);
    }
    CHECK(worst <= cL);
  }
  SUBCASE("zero field") {
    LebesgueNorms z = lebesgue_norms(SpectralField::zeros(g));
    CHECK(z.L4 == 0.0);
    CHECK(z.Linf == 0.0);
  }
  SUBCASE("insufficient padding flagged") {
    CHECK_FALSE(lebesgue_norms(random_field(g, 1, 2, 1), 10).l4_exact);
    CHECK_THROWS(lebesgue_norms(random_field(g, 1, 2, 1), 8));
  }
}

TEST_CASE("random_field") {
  GridSpec g = make_grid(8);
  SpectralField a = random_field(g, 2.0, 3.0, 42), b = random_field(g, 2.0, 3.0, 42);
  CHECK(max_abs_diff(a, b) == 0.0);
  CHECK(check_invariants(a).empty());
  CHECK_THROWS(random_field(g, -1, 3, 1));
  SpectralField s = random_field(g, 6.0, 1.0, 3);
  double direct = 0;
  for_each_mode(g, [&](int k1, int k2, int i) {
    double l = k1 * k1 + k2 * k2;
    direct += l * l * l * (std::norm(s.coeffs[i][0]) + std::norm(s.coeffs[i][1]));
  });
  CHECK(sobolev_norm(s, 3) == doctest::Approx(g.L * std::sqrt(direct)).epsilon(1e-13));
  // dominated by the lowest shells
  double low = 0;
  for_each_mode(g, [&](int k1, int k2, int i) {
    double l = k1 * k1 + k2 * k2;
    if (l <= 2) low += l * l * l * (std::norm(s.coeffs[i][0]) + std::norm(s.coeffs[i][1]));
  });
  CHECK(low > 0.5 * direct);
}

TEST_CASE("snapshot roundtrip") {
  auto dir = std::filesystem::temp_directory_path() / "nselab_snap_test";
  std::filesystem::create_directories(dir);
  SpectralField u = random_field(make_grid(5, 2.0), 1.0, 2.0, 8);
  save_field(u, dir / "a.json");
  save_field(u, dir / "b.json", true);
  SpectralField a = load_field(dir / "a.json"), b = load_field(dir / "b.json");
  CHECK(max_abs_diff(a, u) == 0.0);
  CHECK(max_abs_diff(b, u) == 0.0);
  CHECK(a.grid.L == u.grid.L);
  std::filesystem::remove_all(dir);
}
