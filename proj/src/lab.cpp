#include "nselab/lab.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <regex>
#include <iostream>
#include <sstream>

#include "nselab/dynamics.hpp"
#include "nselab/field_io.hpp"
#include "nselab/ledger.hpp"
#include "nselab/output.hpp"
#include "nselab/sigma_class.hpp"
#include "nselab/spectral_ops.hpp"

namespace nselab {

using nlohmann::json;
namespace fs = std::filesystem;

json default_config() {
  return json::parse(R"({
    "setup": {
      "nu": 1.0,
      "L": 6.283185307179586,
      "K": 16,
      "M": 0,
      "force": {"type": "kolmogorov", "kf": 2, "G": 1.0, "path": ""}
    },
    "initial": {"type": "random", "s": 2.0, "k_c": 4.0, "enstrophy": 0.5, "path": ""},
    "integrator": {
      "dt": 0.0,
      "error_estimation": false,
      "max_field_norm": 0.0,
      "nonlinear": true,
      "sample_every": 1,
      "field_every": 0,
      "alphas": [0.0, 1.0, 2.0]
    },
    "simulate": {"T": 1.0},
    "ray": {"t0": 0.0, "theta": 0.0, "rho_end": 0.001, "steps": 0},
    "verify_strip": {
      "alpha": 1,
      "transient": 20.0,
      "dt": 0.005,
      "n_angles": 9,
      "n_anchors": 8,
      "anchor_spacing": 0.25,
      "ray_steps": 16,
      "real_tolerance": 0.001
    },
    "constants": {
      "alpha_max": 30,
      "sigmas": [0.5, 1.0, 2.0],
      "c0": 1.0,
      "variant": "proof",
      "eps_delta_power": 2,
      "product_depth_cap": 200,
      "c4_depth": 50
    },
    "sigma_fit": {
      "profile": "",
      "alphas": [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0],
      "normalization": "normalized",
      "mode": "integer",
      "sigma": 1.0
    },
    "steady": {"max_iter": 500, "tol": 1e-12, "T_check": 0.0},
    "seed": 0,
    "workers": 0
  })");
}

namespace {

const char* type_name(const json& j) {
  if (j.is_boolean()) return "boolean";
  if (j.is_number_integer()) return "integer";
  if (j.is_number()) return "number";
  if (j.is_string()) return "string";
  if (j.is_array()) return "array";
  if (j.is_object()) return "object";
  return "null";
}

// Returns v converted to the schema type of d, or throws.
json conform(const json& d, const json& v, const std::string& key) {
  auto bad = [&] {
    throw ConfigError("config key '" + key + "' must be " + type_name(d) + ", got " + type_name(v));
  };
  if (d.is_object()) {
    if (!v.is_object()) bad();
    json out = d;
    for (auto it = v.begin(); it != v.end(); ++it) {
      std::string k = key.empty() ? it.key() : key + "." + it.key();
      if (!d.contains(it.key())) throw ConfigError("unknown config key '" + k + "'");
      out[it.key()] = conform(d[it.key()], it.value(), k);
    }
    return out;
  }
  if (d.is_boolean()) {
    if (!v.is_boolean()) bad();
    return v;
  }
  if (d.is_number_integer()) {
    if (v.is_number_integer()) return v;
    if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) return json(v.get<long long>());
    bad();
  }
  if (d.is_number()) {
    if (!v.is_number()) bad();
    return json(v.get<double>());
  }
  if (d.is_string()) {
    if (!v.is_string()) bad();
    return v;
  }
  if (d.is_array()) {
    if (!v.is_array()) bad();
    if (d.empty()) return v;
    json out = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(conform(d[0], v[i], key + "[" + std::to_string(i) + "]"));
    return out;
  }
  bad();
  return {};
}

struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PhysicalSetup build_setup(const json& cfg) {
  const json& s = cfg["setup"];
  const double nu = s["nu"].get<double>();
  if (!(nu > 0)) throw ConfigError("setup.nu must be positive");
  if (!(s["L"].get<double>() > 0)) throw ConfigError("setup.L must be positive");
  GridSpec grid = make_grid(s["K"].get<int>(), s["L"].get<double>(), s["M"].get<int>());
  const json& f = s["force"];
  const std::string type = f["type"];
  const double G = f["G"].get<double>();
  SpectralField g;
  if (type == "kolmogorov") {
    g = kolmogorov_force(grid, f["kf"].get<int>(), G, nu);
  } else if (type == "zero") {
    g = SpectralField::zeros(grid, Symmetry::real);
  } else if (type == "file") {
    g = load_field(f["path"].get<std::string>());
    if (g.grid.K != grid.K || g.grid.L != grid.L) throw ConfigError("force file grid does not match setup");
    g.grid = grid;
    if (G >= 0) g = scale_to_grashof(g, G, nu);
  } else {
    throw ConfigError("setup.force.type must be kolmogorov, zero or file");
  }
  return make_setup(g, nu);
}

SpectralField build_initial(const json& cfg, const PhysicalSetup& setup) {
  const json& in = cfg["initial"];
  const std::string type = in["type"];
  const GridSpec& grid = setup.grid;
  SpectralField u;
  if (type == "zero") {
    return SpectralField::zeros(grid, Symmetry::real);
  } else if (type == "random") {
    u = random_field(grid, in["s"].get<double>(), in["k_c"].get<double>(),
                     derive_seed(cfg["seed"].get<std::uint64_t>(), 0));
  } else if (type == "file") {
    u = load_field(in["path"].get<std::string>());
    if (u.grid.K != grid.K || u.grid.L != grid.L) throw ConfigError("initial field grid does not match setup");
    u.grid = grid;
    if (u.symmetry != Symmetry::real) throw ConfigError("initial field must be real");
  } else {
    throw ConfigError("initial.type must be random, zero or file");
  }
  double e = in["enstrophy"].get<double>();
  if (e > 0) u = scaled_to_norm(u, 1, e * setup.nu * grid.kappa0);
  return u;
}

IntegratorConfig build_integrator(const json& cfg) {
  const json& j = cfg["integrator"];
  IntegratorConfig ic;
  ic.dt = j["dt"].get<double>();
  ic.error_estimation = j["error_estimation"].get<bool>();
  ic.max_field_norm = j["max_field_norm"].get<double>();
  ic.nonlinear = j["nonlinear"].get<bool>();
  ic.sample_every = j["sample_every"].get<int>();
  ic.field_every = j["field_every"].get<int>();
  ic.alphas = j["alphas"].get<std::vector<double>>();
  if (ic.dt < 0) throw ConfigError("integrator.dt must be >= 0");
  if (ic.sample_every < 1) throw ConfigError("integrator.sample_every must be >= 1");
  for (double a : ic.alphas)
    if (a < 0) throw ConfigError("integrator.alphas must be nonnegative");
  return ic;
}

json setup_json(const PhysicalSetup& s) {
  return {{"nu", s.nu},          {"L", s.grid.L}, {"kappa0", s.grid.kappa0},
          {"K", s.grid.K},       {"M", s.grid.M}, {"G", s.G},
          {"single_point_regime", s.single_point_regime}};
}

json row_json(const BoundRow& r) {
  return {{"alpha", r.alpha},
          {"delta", r.delta},
          {"rt_sq_ln", r.ln_rt_sq},
          {"r_sq_ln", r.ln_r_sq},
          {"gamma_ln", r.ln_gamma},
          {"eps", r.eps},
          {"G_alpha", r.G_alpha},
          {"envelope_ln", r.envelope_ln},
          {"gap_upper_ln", r.ln_gap_upper},
          {"gap_lower_ln", r.ln_gap_lower}};
}

json product_json(const ProductResult& p) {
  return {{"value_ln", p.ln_value}, {"depth", p.depth}, {"converged", p.converged}, {"last_term", p.last_term}};
}

json trajectory_report(const TrajectoryRecord& tr) {
  json j = {{"t0", tr.t0},
            {"theta", tr.theta},
            {"h", tr.h},
            {"steps_taken", tr.steps_taken},
            {"guard", tr.guard},
            {"failed", tr.failed},
            {"failure", tr.failure},
            {"max_step_error", tr.max_step_error},
            {"alphas", tr.alphas}};
  if (!tr.samples.empty()) j["final_norms"] = tr.samples.back().norms;
  return j;
}

void write_trajectory_csv(const fs::path& p, const TrajectoryRecord& tr) {
  std::vector<std::string> h{"rho", "re_zeta", "im_zeta"};
  for (double a : tr.alphas) h.push_back("norm_alpha_" + format_double(a));
  CsvWriter w(p, h);
  for (const auto& s : tr.samples) {
    w.cell(s.rho).cell(s.zeta.real()).cell(s.zeta.imag());
    for (double v : s.norms) w.cell(v);
    w.end_row();
  }
}

struct Outputs {
  fs::path dir;
  std::vector<std::string> files;
  fs::path add(const std::string& name) {
    files.push_back(name);
    return dir / name;
  }
};

int cmd_constants(const json& cfg, Outputs& o, std::ostream& log) {
  PhysicalSetup setup = build_setup(cfg);
  const json& k = cfg["constants"];
  const int amax = k["alpha_max"].get<int>();
  if (amax < 3 || amax > 200) throw ConfigError("constants.alpha_max must be in [3, 200]");
  LedgerOptions opt;
  const std::string variant = k["variant"];
  if (variant == "proof")
    opt.variant = RtVariant::proof;
  else if (variant == "statement")
    opt.variant = RtVariant::statement;
  else
    throw ConfigError("constants.variant must be proof or statement");
  opt.eps_delta_power = k["eps_delta_power"].get<int>();
  if (opt.eps_delta_power != 2 && opt.eps_delta_power != 4) throw ConfigError("constants.eps_delta_power must be 2 or 4");
  opt.product_depth_cap = k["product_depth_cap"].get<int>();
  opt.c4_depth = k["c4_depth"].get<int>();
  if (opt.product_depth_cap < 1 || opt.c4_depth < 1) throw ConfigError("product depths must be positive");
  if (!(setup.G > 0)) throw ConfigError("constants needs a positive Grashof number");

  LedgerConstants c = base_constants(setup);
  FixedEnvelope env_fixed;
  ShrinkingEnvelope env_shrink;
  BoundTable fixed = conditional_table(c, amax, opt, &env_fixed);
  BoundTable shr = shrinking_table(c, amax, opt, &env_shrink);
  GRegularity greg = g_regularity(setup.g, setup.nu, amax, c, fixed);
  BoundTable unc = unconditional_pipeline(c, greg.G_alpha, amax);
  Crossover cross = compare_growth(fixed, shr);

  json warnings = json::array();
  if (!c.standing_assumption_ok) {
    std::string w = "G < c_L^-2: the global attractor reduces to a single point; bounds are reported for reference";
    warnings.push_back(w);
    log << "warning: " << w << "\n";
  }

  json j;
  j["setup"] = setup_json(setup);
  j["options"] = {{"variant", variant},
                  {"eps_delta_power", opt.eps_delta_power},
                  {"product_depth_cap", opt.product_depth_cap},
                  {"c4_depth", opt.c4_depth},
                  {"alpha_max", amax}};
  j["warnings"] = warnings;
  j["constants"] = {{"c_L", c.c_L},       {"c_A", c.c_A},       {"nu", c.nu},         {"kappa0", c.kappa0},
                    {"G", c.G},           {"delta1", c.delta1}, {"delta2", c.delta2}, {"delta3", c.delta3},
                    {"R1", c.R1},         {"Rt1", c.Rt1},       {"R2", c.R2},         {"Rt2", c.Rt2},
                    {"N2", c.N2},         {"N3", c.N3},         {"Rt3", c.Rt3},       {"R3", c.R3},
                    {"standing_assumption_ok", c.standing_assumption_ok}};
  json tables;
  for (const BoundTable* t : {&fixed, &shr, &unc}) {
    json rows = json::array();
    for (const auto& r : t->rows) rows.push_back(row_json(r));
    tables[t->mode] = rows;
  }
  j["tables"] = tables;
  j["envelopes"]["fixed_strip"] = {{"C1", product_json(env_fixed.C1)},
                           {"eta_product", product_json(env_fixed.eta)},
                           {"C2_ln", env_fixed.ln_C2},
                           {"C3", env_fixed.C3},
                           {"beta_ln", env_fixed.ln_beta},
                           {"beta1_ln", env_fixed.ln_beta1},
                           {"beta2", env_fixed.beta2},
                           {"beta2_with_2", env_fixed.beta2_proof},
                           {"Cg_ln", env_fixed.ln_Cg}};
  j["envelopes"]["shrinking_strip"] = {{"C4", product_json(env_shrink.C4)},
                            {"C4_partial_ln", env_shrink.C4.partial_ln},
                            {"beta3", env_shrink.beta3},
                            {"Ct_ln", env_shrink.ln_Ct}};
  json ord = json::array();
  for (const auto& x : ordering_checks(fixed)) ord.push_back({{"alpha", x.alpha}, {"upper", x.upper}, {"lower", x.lower}});
  j["orderings"] = ord;
  j["crossover"] = {{"first_alpha_shrinking_below_fixed", cross.first_alpha_shrinking_below},
                    {"fixed_increment_ln", cross.fixed_increment},
                    {"shrinking_increment_ln", cross.shrinking_increment}};
  j["g_regularity"] = {{"G_alpha", greg.G_alpha},
                       {"G_alpha_within_strip_bound", greg.g_within_strip},
                       {"sigma_target", greg.sigma_target}};
  j["Au_bound_comparison"] = {{"Lambda1", greg.Lambda1}, {"Au_bound_R2", greg.bound_R2}, {"Au_bound_literature", greg.bound_literature}};
  json sp = json::array();
  const double G2 = greg.G_alpha.size() > 2 ? greg.G_alpha[2] : 0;
  for (double s : k["sigmas"].get<std::vector<double>>()) {
    if (!(s > 0)) throw ConfigError("constants.sigmas must be positive");
    SigmaPipelineResult r = sigma_propagation(s, k["c0"].get<double>(), c, G2);
    sp.push_back({{"sigma", r.sigma},         {"c0", r.c0},
                  {"M1", r.M1},               {"M2", r.M2},
                  {"M3", r.M3},               {"M4_ln", r.ln_M4},
                  {"Gamma3_M_ln", r.ln_gamma3_M},
                  {"c1_ln", r.ln_c1},         {"c2_ln", r.ln_c2},
                  {"c3_ln", r.ln_c3},         {"c4_ln", r.ln_c4},
                  {"c5_ln", r.ln_c5},         {"c6_ln", r.ln_c6},
                  {"c7_ln", r.ln_c7},         {"sigma1", r.sigma1},
                  {"sigma2", r.sigma2},       {"sigma3", r.sigma3},
                  {"gamma1_ln", r.ln_gamma1}, {"gamma2_ln", r.ln_gamma2},
                  {"gamma3_ln", r.ln_gamma3}, {"alpha1", r.alpha1}});
  }
  j["sigma_propagation"] = sp;
  write_json(o.add("ledger.json"), j);

  CsvWriter w(o.add("ledger.csv"), {"alpha", "delta_alpha", "ln_rt_sq", "ln_r_sq", "ln_gamma", "envelope_ln", "mode"});
  for (const BoundTable* t : {&fixed, &shr, &unc})
    for (const auto& r : t->rows) {
      w.cell(r.alpha).cell(r.delta).cell(r.ln_rt_sq).cell(r.ln_r_sq).cell(r.ln_gamma).cell(r.envelope_ln).cell(t->mode);
      w.end_row();
    }
  return exit_ok;
}

int cmd_simulate(const json& cfg, Outputs& o, std::ostream&) {
  PhysicalSetup setup = build_setup(cfg);
  SpectralField u0 = build_initial(cfg, setup);
  IntegratorConfig ic = build_integrator(cfg);
  double T = cfg["simulate"]["T"].get<double>();
  if (!(T > 0)) throw ConfigError("simulate.T must be positive");
  TrajectoryRecord tr = integrate_real(u0, setup, T, ic);
  write_trajectory_csv(o.add("trajectory.csv"), tr);
  json rep = {{"command", "simulate"}, {"setup", setup_json(setup)}, {"trajectory", trajectory_report(tr)}};

  // Pathwise decay |u(t)| <= e^{-nu kappa0^2 t} |u0| without forcing.
  if (setup.G == 0) {
    const double u0n = sobolev_norm(u0, 0), k0 = setup.grid.kappa0;
    double worst = -INFINITY;
    int checked = 0;
    for (std::size_t a = 0; a < tr.alphas.size(); ++a) {
      if (tr.alphas[a] != 0) continue;
      for (const auto& s : tr.samples) {
        worst = std::max(worst, s.norms[a] - std::exp(-setup.nu * k0 * k0 * s.zeta.real()) * u0n);
        ++checked;
      }
    }
    rep["energy_decay"] = {{"samples_checked", checked}, {"max_excess", checked ? worst : 0.0}, {"holds", worst <= 1e-10 * (1 + u0n)}};
  }
  if (ic.field_every > 0) {
    auto bal = balance_monitor(tr, setup);
    double e = 0, z = 0;
    for (const auto& b : bal) {
      e = std::max(e, std::abs(b.energy) / std::max(b.energy_scale, 1e-300));
      z = std::max(z, std::abs(b.enstrophy) / std::max(b.enstrophy_scale, 1e-300));
    }
    rep["balance"] = {{"panels", bal.size()}, {"max_rel_energy_residual", e}, {"max_rel_enstrophy_residual", z}};
  }
  save_field(tr.final_state, o.add("final_state.json"));
  write_json(o.add("report.json"), rep);
  if (tr.failed) throw NumericFailure(tr.failure);
  return exit_ok;
}

RaySpec build_ray(const json& cfg) {
  const json& r = cfg["ray"];
  RaySpec ray;
  ray.t0 = r["t0"].get<double>();
  ray.theta = r["theta"].get<double>();
  ray.rho_end = r["rho_end"].get<double>();
  ray.steps = r["steps"].get<int>();
  try {
    validate_ray(ray);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("ray: ") + e.what());
  }
  return ray;
}

int cmd_ray(const json& cfg, Outputs& o, std::ostream&) {
  RaySpec ray = build_ray(cfg);
  PhysicalSetup setup = build_setup(cfg);
  SpectralField u0 = build_initial(cfg, setup);
  IntegratorConfig ic = build_integrator(cfg);
  TrajectoryRecord tr = integrate_ray(u0, setup, ray, ic);
  write_trajectory_csv(o.add("trajectory.csv"), tr);
  save_field(tr.final_state, o.add("final_state.json"));
  write_json(o.add("report.json"),
             {{"command", "ray"}, {"setup", setup_json(setup)}, {"trajectory", trajectory_report(tr)}});
  if (tr.failed) throw NumericFailure(tr.failure);
  return exit_ok;
}

int cmd_verify_strip(const json& cfg, Outputs& o, std::ostream& log) {
  PhysicalSetup setup = build_setup(cfg);
  SpectralField u0 = build_initial(cfg, setup);
  const json& v = cfg["verify_strip"];
  StripVerifyConfig sc;
  sc.alpha = v["alpha"].get<int>();
  sc.transient = v["transient"].get<double>();
  sc.dt = v["dt"].get<double>();
  sc.n_angles = v["n_angles"].get<int>();
  sc.n_anchors = v["n_anchors"].get<int>();
  sc.anchor_spacing = v["anchor_spacing"].get<double>();
  sc.ray_steps = v["ray_steps"].get<int>();
  sc.real_tolerance = v["real_tolerance"].get<double>();
  sc.workers = cfg["workers"].get<int>();
  if (sc.alpha < 1 || sc.alpha > 3) throw ConfigError("verify_strip.alpha must be 1, 2 or 3");
  if (!(setup.G > 0)) throw ConfigError("verify-strip needs a positive Grashof number");
  StripVerifyResult r = verify_strip(u0, setup, sc);

  CsvWriter w(o.add("rays.csv"), {"t0", "theta", "rho_end", "max_norm", "bound", "margin", "failed"});
  for (const auto& m : r.rays) {
    w.cell(m.t0).cell(m.theta).cell(m.rho_end).cell(m.max_norm).cell(m.bound).cell(m.margin).cell(int(m.failed));
    w.end_row();
  }
  json ce = json::array();
  for (const auto& m : r.counterexamples)
    ce.push_back({{"t0", m.t0}, {"theta", m.theta}, {"max_norm", m.max_norm}, {"bound", m.bound}, {"margin", m.margin}});
  write_json(o.add("report.json"), {{"command", "verify-strip"},
                                    {"setup", setup_json(setup)},
                                    {"alpha", r.alpha},
                                    {"real_max", r.real_max},
                                    {"real_bound", r.real_bound},
                                    {"real_margin", r.real_margin},
                                    {"ray_margin", r.ray_margin},
                                    {"min_margin", r.min_margin},
                                    {"counterexample_candidates", ce},
                                    {"integration_failed", r.integration_failed},
                                    {"failure", r.failure}});
  if (r.integration_failed) throw NumericFailure(r.failure);
  log << "min margin " << format_double(r.min_margin) << "\n";
  return r.min_margin >= 1 ? exit_ok : exit_margin;
}

int cmd_steady(const json& cfg, Outputs& o, std::ostream&) {
  PhysicalSetup setup = build_setup(cfg);
  const json& s = cfg["steady"];
  SteadyResult r = steady_state_solve(setup, s["max_iter"].get<int>(), s["tol"].get<double>());
  json rep = {{"command", "steady"},
              {"setup", setup_json(setup)},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"norm_0", sobolev_norm(r.u, 0)},
              {"norm_1", sobolev_norm(r.u, 1)}};
  double T = s["T_check"].get<double>();
  if (T > 0) {
    SpectralField u0 = build_initial(cfg, setup);
    IntegratorConfig ic = build_integrator(cfg);
    TrajectoryRecord tr = integrate_real(u0, setup, T, ic);
    if (tr.failed) throw NumericFailure(tr.failure);
    rep["long_time_distance"] = sobolev_norm(tr.final_state - r.u, 0);
  }
  save_field(r.u, o.add("steady_state.json"));
  write_json(o.add("report.json"), rep);
  if (!r.converged) throw NumericFailure("steady-state iteration did not converge");
  return exit_ok;
}

NormProfile read_profile_csv(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot read profile " + p.string());
  NormProfile prof;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, v;
    std::getline(ss, a, ',');
    std::getline(ss, v, ',');
    try {
      double x = std::stod(a), y = std::stod(v);
      prof.alphas.push_back(x);
      prof.values.push_back(y);
    } catch (const std::exception&) {
      if (!header) throw ConfigError("malformed profile line: " + line);
    }
    header = false;
  }
  return prof;
}

int cmd_sigma_fit(const json& cfg, Outputs& o, std::ostream&) {
  const json& s = cfg["sigma_fit"];
  const std::string nstr = s["normalization"], mstr = s["mode"];
  SigmaNormalization norm;
  if (nstr == "normalized")
    norm = SigmaNormalization::normalized;
  else if (nstr == "raw")
    norm = SigmaNormalization::raw;
  else
    throw ConfigError("sigma_fit.normalization must be normalized or raw");
  SigmaMode mode;
  if (mstr == "integer")
    mode = SigmaMode::integer;
  else if (mstr == "continuous")
    mode = SigmaMode::continuous;
  else
    throw ConfigError("sigma_fit.mode must be integer or continuous");
  const double sigma = s["sigma"].get<double>();
  if (!(sigma > 0)) throw ConfigError("sigma_fit.sigma must be positive");

  NormProfile prof;
  json rep = {{"command", "sigma-fit"}};
  const std::string path = s["profile"];
  std::optional<SpectralField> u;
  if (!path.empty()) {
    prof = read_profile_csv(path);
    prof.nu = cfg["setup"]["nu"].get<double>();
    prof.kappa0 = two_pi / cfg["setup"]["L"].get<double>();
    rep["source"] = path;
  } else {
    PhysicalSetup setup = build_setup(cfg);
    u = build_initial(cfg, setup);
    prof = norm_profile(*u, s["alphas"].get<std::vector<double>>(), setup.nu);
    rep["source"] = "initial";
  }
  SigmaFit f;
  try {
    f = estimate_sigma(prof, norm);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sigma-fit: ") + e.what());
  }
  SigmaNormResult nr = u ? c_sigma_norm(*u, sigma, mode, norm, prof.nu) : c_sigma_norm(prof, sigma, mode, norm);
  rep["sigma_hat"] = f.sigma_hat;
  rep["c0_hat"] = f.c0_hat;
  rep["residual"] = f.residual;
  rep["points"] = f.points;
  rep["normalization"] = to_string(norm);
  rep["degenerate"] = f.degenerate;
  rep["note"] = f.note;
  rep["mode"] = to_string(mode);
  rep["c_sigma_norm"] = {{"sigma", nr.sigma}, {"value", nr.value}, {"argmax_alpha", nr.argmax_alpha}, {"c0_hat", nr.c0_hat}};

  CsvWriter w(o.add("profile.csv"), {"alpha", "value"});
  for (std::size_t i = 0; i < prof.alphas.size(); ++i) {
    w.cell(prof.alphas[i]).cell(prof.values[i]);
    w.end_row();
  }
  write_json(o.add("report.json"), rep);
  return exit_ok;
}

}  // namespace

json resolve_config(const json& file, const std::vector<std::string>& overrides) {
  const json d = default_config();
  json cfg = conform(d, file.is_null() ? json::object() : file, "");
  for (const auto& ov : overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must be key=value: '" + ov + "'");
    std::string key = ov.substr(0, eq), val = ov.substr(eq + 1);
    json v = json::parse(val, nullptr, false);
    if (v.is_discarded()) v = val;
    json::json_pointer ptr("/" + std::regex_replace(key, std::regex("\\."), "/"));
    if (!d.contains(ptr)) throw ConfigError("unknown config key '" + key + "'");
    cfg[ptr] = conform(d[ptr], v, key);
  }
  if (!cfg["seed"].is_number_unsigned() && cfg["seed"].get<long long>() < 0) throw ConfigError("seed must be >= 0");
  return cfg;
}

int run_command(const std::string& command, const json& cfg, const fs::path& out, std::ostream& log) {
  Outputs o{out, {}};
  try {
    fs::create_directories(out);
    int rc;
    if (command == "constants")
      rc = cmd_constants(cfg, o, log);
    else if (command == "simulate")
      rc = cmd_simulate(cfg, o, log);
    else if (command == "ray")
      rc = cmd_ray(cfg, o, log);
    else if (command == "verify-strip")
      rc = cmd_verify_strip(cfg, o, log);
    else if (command == "steady")
      rc = cmd_steady(cfg, o, log);
    else if (command == "sigma-fit")
      rc = cmd_sigma_fit(cfg, o, log);
    else
      throw ConfigError("unknown command '" + command + "'");
    write_manifest(out, command, cfg, o.files);
    return rc;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const NumericFailure& e) {
    log << "numerical failure: " << e.what() << "\n";
    write_manifest(out, command, cfg, o.files);
    return exit_numeric;
  } catch (const std::invalid_argument& e) {
    log << "invalid input: " << e.what() << "\n";
    return exit_config;
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Spectral lab for complex-time bounds of 2D periodic Navier-Stokes"};
  std::string command, config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  app.add_option("command", command, "constants | simulate | ray | verify-strip | steady | sigma-fit")
      ->required()
      ->check(CLI::IsMember({"constants", "simulate", "ray", "verify-strip", "steady", "sigma-fit"}));
  app.add_option("--config", config_path, "JSON config; omitted keys take their defaults");
  app.add_option("--out", out_dir, "output directory (default out/<command>)");
  app.add_option("--seed", seed, "overrides the config seed");
  app.add_option("--override", overrides, "dotted key=value, applied after the file")->take_all();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config;
  }
  json cfg;
  try {
    json file = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config " + config_path);
      file = json::parse(in, nullptr, false);
      if (file.is_discarded()) throw ConfigError("config is not valid JSON: " + config_path);
    }
    cfg = resolve_config(file, overrides);
    if (seed) cfg["seed"] = *seed;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  }
  if (out_dir.empty()) out_dir = "out/" + command;
  return run_command(command, cfg, out_dir, std::cerr);
}

}  // namespace nselab
