#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "chaosint/quadrature.hpp"
#include "chaosint/serialization.hpp"

namespace chaosint::cli {

struct QuadratureSettings {
  int panels = 8;
  int nodes = 16;
  int grading_levels = 24;

  friend bool operator==(const QuadratureSettings&, const QuadratureSettings&) = default;
};

struct ExperimentConfig {
  std::string kernel = "brownian";  // brownian | fbm | custom-grid
  double hurst = 0.75;
  double horizon = 1.0;
  std::string kernel_csv;           // custom-grid only
  std::string basis = "cosine";     // cosine | legendre
  unsigned modes = 8;
  unsigned order = 4;
  int grid = 256;
  QuadratureSettings quadrature;
  std::uint64_t seed = 20260117;
  std::size_t samples = 10000;
  std::string out;                  // empty: print only
  std::string format = "json";      // json | csv

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
  QuadratureRule singular_rule() const {
    return QuadratureRule::singular(quadrature.panels, quadrature.nodes, quadrature.grading_levels);
  }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

Json config_to_json(const ExperimentConfig& c);
/// Fields absent from `j` keep their value in `base`; unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
void save_config(const ExperimentConfig& c, const std::filesystem::path& path);

}  // namespace chaosint::cli
