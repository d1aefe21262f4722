#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chaosint/serialization.hpp"

namespace chaosint::verify {

struct CriterionResult {
  CriterionResult() = default;
  CriterionResult(std::string id_, std::string title_) : id(std::move(id_)), title(std::move(title_)) {}

  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
  Json data = Json::object();
  double seconds = 0.0;  // wall time; never serialised
};

struct VerifyOptions {
  std::uint64_t seed = 20260117;
  std::size_t samples = 10000;
};

CriterionResult hermite_orthogonality();
CriterionResult wick_hermite_identity();
CriterionResult wick_algebra_laws();
CriterionResult ito_identity();
CriterionResult strat_identity();
CriterionResult fbm_bound();
CriterionResult operator_norm();
CriterionResult covariance_oracle();
CriterionResult wick_sde(const VerifyOptions& options);
CriterionResult mc_integrals(const VerifyOptions& options);
/// Left-point sums on Brownian-completed paths (truncated path plus an
/// independent sample of the remainder W - W_K) against the chaos Ito result.
CriterionResult completed_path_ito(const VerifyOptions& options);
CriterionResult basis_independence();

/// algebra, integrals, fbm, sde, mc.
const std::vector<std::string>& suite_names();
/// Throws ConfigError for an unknown suite.
std::vector<CriterionResult> run_suite(const std::string& name, const VerifyOptions& options = {});
/// The ten numbered acceptance criteria followed by the supplementary checks.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options = {});

/// {"suite", "pass", "criteria": [{"id", "title", "pass", "detail", "data"}]}.
Json report_json(const std::string& suite, const std::vector<CriterionResult>& results);

}  // namespace chaosint::verify
