#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chaosint/basis.hpp"
#include "chaosint/chaos_expansion.hpp"
#include "chaosint/kernel.hpp"
#include "chaosint/multi_index.hpp"
#include "chaosint/sde.hpp"

namespace chaosint {

/// n_samples x modes standard normals, row-major. Row i is drawn from its own
/// stream keyed by (seed, i), so batches do not depend on thread count and a
/// larger batch extends a smaller one with the same seed.
struct SampleBatch {
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  unsigned modes = 0;
  std::vector<double> z;

  std::span<const double> row(std::size_t i) const { return {z.data() + i * modes, modes}; }
};

SampleBatch sample_batch(std::uint64_t seed, std::size_t n, unsigned modes);

/// Seed of the stream for (seed, stream index).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// X(t_i) = sum_k M~_k(t_i) z_k with the M~ table computed once.
class PathSynthesizer {
 public:
  PathSynthesizer(const Kernel& kernel, const BasisFamily& basis, unsigned modes, const TimeGrid& grid);

  std::vector<double> path(std::span<const double> z) const;
  const std::vector<std::vector<double>>& m_tilde() const noexcept { return m_tilde_; }
  const std::vector<double>& times() const noexcept { return times_; }

 private:
  unsigned modes_;
  std::vector<double> times_;
  std::vector<std::vector<double>> m_tilde_;
};

std::vector<double> synthesize_path(const Kernel& kernel, const BasisFamily& basis, const Truncation& trunc,
                                    std::span<const double> z, const TimeGrid& grid);

/// Left-point sum  sum_i X(t_i) (Y(t_{i+1}) - Y(t_i)).
double discrete_ito(std::span<const double> x, std::span<const double> y);
/// Midpoint sum  sum_i (X(t_i) + X(t_{i+1})) / 2 (Y(t_{i+1}) - Y(t_i)).
double discrete_strat(std::span<const double> x, std::span<const double> y);

struct McReport {
  double statistic = 0.0;  // mean of chaos value minus oracle value
  double stderr_value = 0.0;
  double tolerance = 0.0;  // k_sigma * stderr + rounding floor
  bool pass = false;
  std::uint64_t seed = 0;
  std::size_t n = 0;
};

/// Compares F evaluated at each batch row against the per-sample oracle values;
/// passes when |mean difference| <= k_sigma * standard error + 64 eps mean|oracle|.
/// The floor matters only when both sides agree to rounding, where the
/// standard error itself is of rounding size and carries no information.
McReport mc_compare(const ChaosExpansion& f, std::span<const double> oracle, const SampleBatch& batch,
                    double k_sigma = 3.0);

/// Mean and standard error of per-sample differences (two-pass, fixed order);
/// `scale` is the typical oracle magnitude used for the rounding floor.
McReport mc_summary(std::span<const double> diffs, std::uint64_t seed, double k_sigma = 3.0, double scale = 0.0);

}  // namespace chaosint
