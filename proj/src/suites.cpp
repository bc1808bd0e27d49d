#include "nselab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "nselab/bilinear.hpp"
#include "nselab/parallel.hpp"
#include "nselab/spectral_ops.hpp"

namespace nselab {

namespace {

double safe_ratio(double num, double den) {
  if (num == 0) return 0;
  return den > 0 ? num / den : std::numeric_limits<double>::infinity();
}

// |(B(a,b),c)| <= l1(a) |A^{1/2} b| |c|
double term_scale(const SpectralField& a, const SpectralField& b, const SpectralField& c) {
  return ell1_coeffs(a) * sobolev_norm(b, 1) * sobolev_norm(c, 0);
}

}  // namespace

double IdentityReport::max_residual() const {
  double m = 0;
  for (auto& [k, v] : residuals) m = std::max(m, v);
  return m;
}

IdentityReport identity_suite(const SpectralField& u, const SpectralField& v, const SpectralField& w) {
  require_same_modes(u.grid, v.grid);
  require_same_modes(u.grid, w.grid);
  IdentityReport r;
  r.real_inputs = u.symmetry == Symmetry::real && v.symmetry == Symmetry::real && w.symmetry == Symmetry::real;
  auto pair = r.real_inputs ? inner_product : bilinear_pairing;

  {
    cplx a = pair(bilinear_fft(u, v), w), b = pair(bilinear_fft(u, w), v);
    double s = term_scale(u, v, w) + term_scale(u, w, v);
    r.scales["biop1"] = s;
    r.residuals["biop1"] = safe_ratio(std::abs(a + b), s);
  }
  const SpectralField Au = apply_power(u, 1.0), Av = apply_power(v, 1.0);
  if (r.real_inputs) {
    SpectralField Buu = bilinear_fft(u, u);
    double s2 = term_scale(u, u, Au);
    r.scales["biop2"] = s2;
    r.residuals["biop2"] = safe_ratio(std::abs(inner_product(Buu, Au)), s2);

    cplx l3 = inner_product(bilinear_fft(Av, v), u), r3 = inner_product(bilinear_fft(u, v), Av);
    double s3 = term_scale(Av, v, u) + term_scale(u, v, Av);
    r.scales["biop3"] = s3;
    r.residuals["biop3"] = safe_ratio(std::abs(l3 - r3), s3);

    cplx t4 = inner_product(bilinear_fft(u, v), Av) + inner_product(bilinear_fft(v, u), Av) +
              inner_product(bilinear_fft(v, v), Au);
    double s4 = term_scale(u, v, Av) + term_scale(v, u, Av) + term_scale(v, v, Au);
    r.scales["biop4"] = s4;
    r.residuals["biop4"] = safe_ratio(std::abs(t4), s4);
  } else {
    r.not_applicable = {"biop2", "biop3", "biop4"};
  }
  {
    SpectralField lhs = apply_power(bilinear_fft(u, u), 1.0);
    SpectralField rhs = bilinear_fft(u, Au) - bilinear_fft(Au, u);
    double s = ell1_coeffs(u) * sobolev_norm(u, 3) + ell1_coeffs(Au) * sobolev_norm(u, 1);
    r.scales["abiop"] = s;
    r.residuals["abiop"] = safe_ratio(sobolev_norm(lhs - rhs, 0), s);
  }
  return r;
}

InequalityReport inequality_suite(const SpectralField& u, const SpectralField& v, const SpectralField& w,
                                  const std::vector<int>& alphas) {
  InequalityReport rep;
  const double cL = ladyzhenskaya_constant(), cA = agmon_constant();
  auto add = [&](std::string name, double alpha, double lhs, double rhs) {
    InequalityCheck c{std::move(name), alpha, lhs, rhs, safe_ratio(lhs, rhs)};
    if (c.ratio > rep.worst_ratio || rep.worst_name.empty()) {
      rep.worst_ratio = std::max(rep.worst_ratio, c.ratio);
      rep.worst_name = c.name;
    }
    rep.checks.push_back(std::move(c));
  };
  auto n = [](const SpectralField& f, double a) { return sobolev_norm(f, a); };
  const bool real = u.symmetry == Symmetry::real && v.symmetry == Symmetry::real && w.symmetry == Symmetry::real;
  const SpectralField Buu = bilinear_fft(u, u);
  const double u0 = n(u, 0), u1 = n(u, 1), u2 = n(u, 2), u3 = n(u, 3);
  auto pw = [&](int a) { return apply_power(u, a); };

  LebesgueNorms ln = lebesgue_norms(u);
  if (real) {
    add("bieq2", 0, std::abs(inner_product(Buu, pw(2))), 2 * cL * cL * u2 * u3 * u1);
    add("bieq3", 0, std::abs(inner_product(Buu, pw(3))),
        std::sqrt(2.0) * (std::sqrt(2.0) * cL * cL + cA) * std::sqrt(u0 * u2) * u3 * n(u, 4));
    add("ladyzhenskaya", 0, ln.L4, cL * std::sqrt(u0 * u1));
    add("agmon", 0, ln.Linf, cA * std::sqrt(u0 * u2));
  }
  const double c = 2 * cL * cL + cA;
  add("b_pair_a1", 0, std::abs(inner_product(Buu, pw(1))), 4 * cL * cL * std::sqrt(u0) * u1 * std::pow(u2, 1.5));
  add("b_pair_a2", 0, std::abs(inner_product(Buu, pw(2))), 2 * c * std::sqrt(u0) * std::pow(u2, 1.5) * u3);
  add("b_pair_a3", 0, std::abs(inner_product(Buu, pw(3))), 2 * c * std::sqrt(u0) * std::pow(u2, 1.5) * n(u, 5));
  add("ladyzhenskaya_complex", 0, ln.L4, 2 * cL * std::sqrt(u0 * u1));
  add("agmon_complex", 0, ln.Linf, 2 * cA * std::sqrt(u0 * u2));

  if (!alphas.empty()) {
    const SpectralField Buv = bilinear_fft(u, v);
    const double v1 = n(v, 1), v3 = n(v, 3);
    for (int a : alphas) {
      double lhs = std::abs(inner_product(Buv, apply_power(w, a)));
      double core = (std::sqrt(u0 * u2) * n(v, 1 + a) + n(u, a) * std::sqrt(v1 * v3)) * n(w, a);
      if (real) add("b_high_real", a, lhs, std::pow(2.0, a) * cA * core);
      add("b_high_complex", a, lhs, std::pow(2.0, a + 1.5) * cA * core);
    }
  }
  return rep;
}

InequalityReport inequality_suite(const SpectralField& u) { return inequality_suite(u, u, u, {4, 5, 6, 7, 8}); }

namespace {

SpectralField draw(const GridSpec& grid, std::uint64_t seed, int which, Symmetry sym) {
  Rng rng(seed);
  const FieldFamily fams[3] = {FieldFamily::power_law, FieldFamily::white_in_shell, FieldFamily::single_shell};
  return sample_family(grid, fams[which % 3], rng, sym);
}

void merge(SuiteCampaign& c, const std::vector<std::vector<SuiteRow>>& parts) {
  for (const auto& p : parts)
    for (const auto& r : p) {
      c.rows.push_back(r);
      double& m = c.max_value[r.name];
      m = std::max(m, r.value);
      c.count[r.name]++;
    }
}

}  // namespace

SuiteCampaign identity_campaign(const GridSpec& grid, int samples, std::uint64_t seed, Symmetry sym, int workers) {
  std::vector<int> na(samples, 0);
  auto parts = parallel_map(samples, workers, [&](std::size_t i) {
    std::uint64_t s = derive_seed(seed, i);
    SpectralField u = draw(grid, derive_seed(s, 0), int(i), sym);
    SpectralField v = draw(grid, derive_seed(s, 1), int(i) + 1, sym);
    SpectralField w = draw(grid, derive_seed(s, 2), int(i) + 2, sym);
    IdentityReport r = identity_suite(u, v, w);
    na[i] = r.not_applicable.size() == 3;
    std::vector<SuiteRow> rows;
    for (auto& [k, val] : r.residuals) rows.push_back({"identity", k, int(i), 0, val});
    return rows;
  });
  SuiteCampaign c;
  merge(c, parts);
  for (int x : na) c.not_applicable_marked += x;
  return c;
}

SuiteCampaign inequality_campaign(const GridSpec& grid, int samples, std::uint64_t seed, Symmetry sym,
                                  const std::vector<int>& alphas, int workers) {
  auto parts = parallel_map(samples, workers, [&](std::size_t i) {
    std::uint64_t s = derive_seed(seed, i);
    SpectralField u = draw(grid, derive_seed(s, 0), int(i), sym);
    SpectralField v = draw(grid, derive_seed(s, 1), int(i) + 1, sym);
    SpectralField w = draw(grid, derive_seed(s, 2), int(i) + 2, sym);
    InequalityReport r = inequality_suite(u, v, w, alphas);
    std::vector<SuiteRow> rows;
    for (auto& ch : r.checks) rows.push_back({"inequality", ch.name, int(i), ch.alpha, ch.ratio});
    return rows;
  });
  SuiteCampaign c;
  merge(c, parts);
  return c;
}

void write_suite_csv(const SuiteCampaign& c, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "kind,name,sample_id,alpha,value\n";
  char buf[64];
  for (const auto& r : c.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.value);
    os << r.kind << ',' << r.name << ',' << r.sample_id << ',' << r.alpha << ',' << buf << '\n';
  }
}

}  // namespace nselab
