#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>

#include "chaosint/commands.hpp"
#include "chaosint/errors.hpp"

using namespace chaosint;
using namespace chaosint::cli;

int main(int argc, char** argv) {
  CLI::App app{"Wiener chaos stochastic integration toolkit"};
  app.require_subcommand(1);

  std::string config_path, save_path;
  ExperimentConfig flags;
  app.add_option("--config", config_path, "JSON experiment config");
  auto* o_kernel = app.add_option("--kernel", flags.kernel, "brownian | fbm | custom-grid");
  auto* o_hurst = app.add_option("--hurst", flags.hurst, "Hurst parameter for fbm");
  auto* o_horizon = app.add_option("--horizon", flags.horizon, "time horizon T");
  auto* o_csv = app.add_option("--kernel-csv", flags.kernel_csv, "kernel table for custom-grid");
  auto* o_basis = app.add_option("--basis", flags.basis, "cosine | legendre");
  auto* o_modes = app.add_option("--modes", flags.modes, "number of basis modes K");
  auto* o_order = app.add_option("--order", flags.order, "maximal chaos order N");
  auto* o_grid = app.add_option("--grid", flags.grid, "time grid size M");
  auto* o_seed = app.add_option("--seed", flags.seed, "random seed");
  auto* o_samples = app.add_option("--samples", flags.samples, "Monte Carlo sample count");
  auto* o_out = app.add_option("--out", flags.out, "output directory");
  auto* o_format = app.add_option("--format", flags.format, "json | csv");
  app.add_option("--save-config", save_path, "write the effective config to this path");

  HermiteArgs hermite_args;
  auto* hermite = app.add_subcommand("hermite", "tabulate H_n(t) and the Gauss-Hermite orthogonality table");
  hermite->add_option("--n-max", hermite_args.n_max, "largest degree");
  hermite->add_option("--t-min", hermite_args.t_min, "first t");
  hermite->add_option("--t-max", hermite_args.t_max, "last t");
  hermite->add_option("--t-points", hermite_args.t_points, "number of t values");

  IntegrateArgs integrate_args;
  auto* integrate = app.add_subcommand("integrate", "Ito / Stratonovich / field integral of an integrand");
  integrate->add_option("--integrand", integrate_args.integrand, "w-path or an H-valued chaos JSON file");
  integrate->add_option("--mode", integrate_args.mode, "ito | strat | field-ito");

  SdeArgs sde_args;
  auto* sde = app.add_subcommand("sde", "solve u(t) = 1 + X_t(u) in chaos coordinates");
  sde->add_option("--mode", sde_args.mode, "ito | strat");

  auto* fbm = app.add_subcommand("fbm", "fBm kernel constants and operator-norm bounds");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "algebra | integrals | fbm | sde | mc")->required();

  for (auto* sub : {hermite, integrate, sde, fbm, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config_error;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path, cfg);
    if (o_kernel->count()) cfg.kernel = flags.kernel;
    if (o_hurst->count()) cfg.hurst = flags.hurst;
    if (o_horizon->count()) cfg.horizon = flags.horizon;
    if (o_csv->count()) cfg.kernel_csv = flags.kernel_csv;
    if (o_basis->count()) cfg.basis = flags.basis;
    if (o_modes->count()) cfg.modes = flags.modes;
    if (o_order->count()) cfg.order = flags.order;
    if (o_grid->count()) cfg.grid = flags.grid;
    if (o_seed->count()) cfg.seed = flags.seed;
    if (o_samples->count()) cfg.samples = flags.samples;
    if (o_out->count()) cfg.out = flags.out;
    if (o_format->count()) cfg.format = flags.format;
    cfg.validate();
    if (!save_path.empty()) save_config(cfg, save_path);

    if (*hermite) return cmd_hermite(cfg, hermite_args, std::cout);
    if (*integrate) return cmd_integrate(cfg, integrate_args, std::cout);
    if (*sde) return cmd_sde(cfg, sde_args, std::cout);
    if (*fbm) return cmd_fbm(cfg, std::cout);
    return cmd_verify(cfg, suite, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config_error;
  }
}
