#include "chaosint/commands.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "chaosint/errors.hpp"
#include "chaosint/fbm.hpp"
#include "chaosint/hermite.hpp"
#include "chaosint/integrals.hpp"
#include "chaosint/kernel_ops.hpp"
#include "chaosint/sde.hpp"
#include "chaosint/verify.hpp"

namespace chaosint::cli {

namespace {

namespace fs = std::filesystem;

void write_file(const ExperimentConfig& cfg, const std::string& name, const std::string& content) {
  if (cfg.out.empty()) return;
  fs::create_directories(cfg.out);
  std::ofstream f(fs::path(cfg.out) / name);
  if (!f) throw ConfigError("cannot write " + (fs::path(cfg.out) / name).string());
  f << content;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

KernelPtr kernel_of(const ExperimentConfig& cfg) { return make_kernel(cfg.kernel, cfg.hurst, cfg.kernel_csv); }

BasisFamily basis_of(const ExperimentConfig& cfg) { return {parse_basis_kind(cfg.basis), cfg.horizon}; }

Json kernel_json(const ExperimentConfig& cfg) {
  Json j{{"name", cfg.kernel}};
  if (cfg.kernel == "fbm") j["hurst"] = cfg.hurst;
  if (cfg.kernel == "custom-grid") j["csv"] = cfg.kernel_csv;
  return j;
}

std::string chaos_csv(const ChaosExpansion& f) {
  std::string s = "alpha,value\n";
  for (const auto& [a, c] : f.coeffs())
    if (c != 0.0) s += fmt::format("{},{}\n", a.is_zero() ? "0" : a.to_string(), format_double(c));
  return s;
}

}  // namespace

int cmd_hermite(const ExperimentConfig& cfg, const HermiteArgs& args, std::ostream& out) {
  if (args.n_max > 170) throw ConfigError("n-max must be at most 170");
  if (args.t_points < 1 || !(args.t_min <= args.t_max)) throw ConfigError("invalid t range");
  if (args.t_points == 1 && args.t_min != args.t_max) throw ConfigError("a single t point needs t-min == t-max");
  std::vector<double> ts(args.t_points);
  for (int i = 0; i < args.t_points; ++i)
    ts[i] = args.t_points == 1 ? args.t_min : args.t_min + (args.t_max - args.t_min) * i / (args.t_points - 1);

  const NodeRule& gh = gauss_hermite(64);
  std::vector<std::vector<double>> ortho(args.n_max + 1, std::vector<double>(args.n_max + 1, 0.0));
  for (unsigned n = 0; n <= args.n_max; ++n)
    for (unsigned m = 0; m <= args.n_max; ++m)
      for (std::size_t q = 0; q < gh.nodes.size(); ++q)
        ortho[n][m] += gh.weights[q] * hermite(n, gh.nodes[q]) * hermite(m, gh.nodes[q]);

  std::string values_csv = "n,t,value\n";
  Json values = Json::array();
  for (unsigned n = 0; n <= args.n_max; ++n)
    for (double t : ts) {
      const double v = hermite(n, t);
      values_csv += fmt::format("{},{},{}\n", n, format_double(t), format_double(v));
      values.push_back(Json{{"n", n}, {"t", t}, {"value", v}});
    }
  std::string ortho_csv = "n,m,expectation\n";
  for (unsigned n = 0; n <= args.n_max; ++n)
    for (unsigned m = 0; m <= args.n_max; ++m) ortho_csv += fmt::format("{},{},{}\n", n, m, format_double(ortho[n][m]));

  const Json result{{"values", values}, {"orthogonality", Json{{"quadrature_nodes", 64}, {"table", ortho}}}};
  write_file(cfg, "hermite.csv", values_csv);
  write_file(cfg, "hermite_orthogonality.csv", ortho_csv);
  write_file(cfg, "hermite.json", dump(result));
  out << (cfg.format == "csv" ? values_csv : dump(result));
  return exit_ok;
}

int cmd_integrate(const ExperimentConfig& cfg, const IntegrateArgs& args, std::ostream& out) {
  const BasisFamily basis = basis_of(cfg);
  HValuedChaos eta({cfg.modes, cfg.order});
  if (args.integrand == "w-path") {
    eta = brownian_path_integrand(basis, {cfg.modes, cfg.order});
  } else {
    std::ifstream in(args.integrand);
    if (!in) throw ConfigError("cannot open integrand file " + args.integrand);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("integrand file is not valid JSON: " + std::string(e.what()));
    }
    eta = h_valued_from_json(j);
  }
  ChaosExpansion result(eta.truncation());
  if (args.mode == "ito")
    result = ito_integral(eta);
  else if (args.mode == "strat")
    result = strat_integral(eta);
  else if (args.mode == "field-ito")
    result = field_ito_integral(eta, *kernel_of(cfg), basis);
  else
    throw ConfigError("mode must be ito, strat or field-ito");

  const AdmissibilityReport adm = admissibility_diagnostic(eta);
  Json j{{"mode", args.mode},
         {"integrand", args.integrand},
         {"basis", cfg.basis},
         {"horizon", cfg.horizon}};
  if (args.mode == "field-ito") j["kernel"] = kernel_json(cfg);
  j["result"] = to_json(result);
  j["norm_sq"] = result.norm_sq();
  j["mean"] = result.mean();
  j["admissibility"] = Json{{"weighted_norm", adm.weighted_norm}, {"tail_ratio", adm.tail_ratio}};
  write_file(cfg, "integral.json", dump(j));
  write_file(cfg, "integral.csv", chaos_csv(result));
  out << (cfg.format == "csv" ? chaos_csv(result) : dump(j));
  return exit_ok;
}

int cmd_sde(const ExperimentConfig& cfg, const SdeArgs& args, std::ostream& out) {
  if (args.mode != "ito" && args.mode != "strat") throw ConfigError("sde mode must be ito or strat");
  const KernelPtr kernel = kernel_of(cfg);
  const BasisFamily basis = basis_of(cfg);
  const Truncation trunc{cfg.modes, cfg.order};
  const TimeGrid grid = TimeGrid::uniform(cfg.horizon, cfg.grid);
  if (args.mode == "strat") solve(*kernel, basis, trunc, grid, Interpretation::stratonovich);

  const PropagatorSolution sol = solve_closed_form(*kernel, basis, trunc, grid, cfg.singular_rule());
  Json discrepancy = nullptr;
  if (kernel->has_derivative() && kernel->adapted())
    discrepancy = max_discrepancy(sol, solve_picard(*kernel, basis, trunc, grid));
  const double m2 = second_moment(sol, cfg.horizon);
  const double target = std::exp(covariance_from_kernel(*kernel, cfg.horizon, cfg.horizon, cfg.singular_rule()));

  std::ostringstream csv;
  write_solution_csv(sol, csv);
  write_file(cfg, "solution.csv", csv.str());
  write_file(cfg, "solution_alphas.json", dump(alpha_map_json(sol)));
  Json j{{"kernel", kernel_json(cfg)},
         {"basis", cfg.basis},
         {"horizon", cfg.horizon},
         {"trunc", to_json(trunc)},
         {"grid", cfg.grid},
         {"closed_vs_picard", discrepancy},
         {"second_moment", m2},
         {"exp_covariance", target},
         {"second_moment_relative_gap", std::abs(m2 - target) / target},
         {"mean", sol.u.back()[0]}};
  write_file(cfg, "sde_summary.json", dump(j));
  out << (cfg.format == "csv" ? csv.str() : dump(j));
  return exit_ok;
}

int cmd_fbm(const ExperimentConfig& cfg, std::ostream& out) {
  check_hurst(cfg.hurst);
  const FbmKernel kernel(cfg.hurst);
  const double k1 = fbm_k1(cfg.hurst, cfg.horizon);
  const double emp = k1_empirical(kernel, cfg.horizon);
  const double bound = op_norm_bound(0.0, k1);
  const double est = op_norm_estimate(kernel, cfg.horizon, std::max(cfg.grid, 2));
  const bool pass = emp <= k1 + 1e-6 && est <= bound;
  const Json j{{"hurst", cfg.hurst},         {"horizon", cfg.horizon},   {"c_h", fbm_c_h(cfg.hurst)},
               {"k1", k1},                  {"k1_empirical", emp},      {"norm_bound", bound},
               {"norm_estimate", est},      {"norm_grid", std::max(cfg.grid, 2)}, {"pass", pass}};
  write_file(cfg, "fbm.json", dump(j));
  if (cfg.format == "csv")
    out << "quantity,value\n"
        << fmt::format("c_h,{}\nk1,{}\nk1_empirical,{}\nnorm_bound,{}\nnorm_estimate,{}\n",
                       format_double(fbm_c_h(cfg.hurst)), format_double(k1), format_double(emp), format_double(bound),
                       format_double(est));
  else
    out << dump(j);
  return pass ? exit_ok : exit_verification_failed;
}

int cmd_verify(const ExperimentConfig& cfg, const std::string& suite, std::ostream& out) {
  verify::VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.samples = cfg.samples;
  const auto results = verify::run_suite(suite, opts);
  const Json report = verify::report_json(suite, results);
  write_file(cfg, "verify_" + suite + ".json", dump(report));
  if (cfg.format == "csv") {
    out << "id,pass,title\n";
    for (const auto& r : results) out << fmt::format("{},{},\"{}\"\n", r.id, r.pass ? "true" : "false", r.title);
  } else {
    out << dump(report);
  }
  return report["pass"].get<bool>() ? exit_ok : exit_verification_failed;
}

}  // namespace chaosint::cli
