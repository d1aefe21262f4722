#pragma once

#include <iosfwd>
#include <string>

#include "chaosint/config.hpp"

namespace chaosint::cli {

enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_config_error = 2 };

struct HermiteArgs {
  unsigned n_max = 10;
  double t_min = -3.0;
  double t_max = 3.0;
  int t_points = 13;
};

struct IntegrateArgs {
  std::string integrand = "w-path";  // w-path or a path to an H-valued chaos JSON file
  std::string mode = "ito";          // ito | strat | field-ito
};

struct SdeArgs {
  std::string mode = "ito";  // ito | strat (rejected)
};

// Each command prints its result to `out` and, when cfg.out is set, writes
// files into that directory. Errors are thrown; the caller maps them to exit codes.
int cmd_hermite(const ExperimentConfig& cfg, const HermiteArgs& args, std::ostream& out);
int cmd_integrate(const ExperimentConfig& cfg, const IntegrateArgs& args, std::ostream& out);
int cmd_sde(const ExperimentConfig& cfg, const SdeArgs& args, std::ostream& out);
int cmd_fbm(const ExperimentConfig& cfg, std::ostream& out);
int cmd_verify(const ExperimentConfig& cfg, const std::string& suite, std::ostream& out);

}  // namespace chaosint::cli
