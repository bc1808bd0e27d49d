#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nselab/field.hpp"

namespace nselab {

// Residuals of the algebraic identities, each divided by a rigorous bound on
// the size of its terms: |(B(a,b),c)| <= l1(a) |A^{1/2} b| |c| with l1 the
// coefficient sum (a bound for sup|a|). 0/0 is reported as 0.
struct IdentityReport {
  bool real_inputs = true;
  std::map<std::string, double> residuals;  // biop1..biop4, abiop
  std::map<std::string, double> scales;
  std::vector<std::string> not_applicable;

  bool applicable(const std::string& name) const { return residuals.count(name) > 0; }
  double max_residual() const;
};

// Complex inputs: biop2-biop4 are marked not applicable; biop1 is evaluated
// with the bilinear pairing <f,g> = L^2 sum f(k).g(-k), under which the skew
// symmetry survives complexification; abiop is a polynomial identity and is
// evaluated as is.
IdentityReport identity_suite(const SpectralField& u, const SpectralField& v, const SpectralField& w);

struct InequalityCheck {
  std::string name;
  double alpha = 0;  // power index for the higher-order forms, else 0
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;  // lhs/rhs, 0 when both vanish
};

struct InequalityReport {
  std::vector<InequalityCheck> checks;
  double worst_ratio = 0;
  std::string worst_name;
};

// Real u (and v, w): bieq2, bieq3, b_high_real for each alpha, ladyzhenskaya,
// agmon. Always: b_pair_a{1,2,3}, b_high_complex for each alpha and the complex
// Ladyzhenskaya/Agmon forms (factor 2). The b_high_* checks pair B(u,v) with
// A^alpha w.
InequalityReport inequality_suite(const SpectralField& u, const SpectralField& v, const SpectralField& w,
                                  const std::vector<int>& alphas);
InequalityReport inequality_suite(const SpectralField& u);

// Sampled campaigns over the three field families.
struct SuiteRow {
  std::string kind;  // identity | inequality
  std::string name;
  int sample_id = 0;
  double alpha = 0;
  double value = 0;  // residual or ratio
};

struct SuiteCampaign {
  std::vector<SuiteRow> rows;
  std::map<std::string, double> max_value;
  std::map<std::string, int> count;
  int not_applicable_marked = 0;  // complex samples with biop2-4 flagged
};

SuiteCampaign identity_campaign(const GridSpec& grid, int samples, std::uint64_t seed, Symmetry sym, int workers = 0);
SuiteCampaign inequality_campaign(const GridSpec& grid, int samples, std::uint64_t seed, Symmetry sym,
                                  const std::vector<int>& alphas, int workers = 0);

void write_suite_csv(const SuiteCampaign& c, const std::filesystem::path& path);

}  // namespace nselab
