#include "chaosint/monte_carlo.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "chaosint/errors.hpp"
#include "chaosint/kernel_ops.hpp"
#include "parallel.hpp"

namespace chaosint {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) { return splitmix64(splitmix64(seed) ^ stream); }

SampleBatch sample_batch(std::uint64_t seed, std::size_t n, unsigned modes) {
  if (n < 1 || modes < 1) throw ConfigError("sample_batch needs n >= 1 and K >= 1");
  SampleBatch b{seed, n, modes, std::vector<double>(n * modes)};
  detail::parallel_for(n, [&](std::size_t i) {
    std::mt19937_64 engine(stream_seed(seed, i));
    std::normal_distribution<double> normal;
    for (unsigned k = 0; k < modes; ++k) b.z[i * modes + k] = normal(engine);
  });
  return b;
}

PathSynthesizer::PathSynthesizer(const Kernel& kernel, const BasisFamily& basis, unsigned modes, const TimeGrid& grid)
    : modes_(modes), times_(grid.points), m_tilde_(m_tilde_table(kernel, basis, modes, grid.points)) {}

std::vector<double> PathSynthesizer::path(std::span<const double> z) const {
  if (z.size() < modes_) throw DimensionError("path synthesis needs " + std::to_string(modes_) + " normals");
  std::vector<double> x(times_.size(), 0.0);
  for (std::size_t i = 0; i < times_.size(); ++i)
    for (unsigned k = 0; k < modes_; ++k) x[i] += m_tilde_[i][k] * z[k];
  return x;
}

std::vector<double> synthesize_path(const Kernel& kernel, const BasisFamily& basis, const Truncation& trunc,
                                    std::span<const double> z, const TimeGrid& grid) {
  return PathSynthesizer(kernel, basis, trunc.modes, grid).path(z);
}

double discrete_ito(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("paths live on different grids");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += x[i] * (y[i + 1] - y[i]);
  return s;
}

double discrete_strat(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("paths live on different grids");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += 0.5 * (x[i] + x[i + 1]) * (y[i + 1] - y[i]);
  return s;
}

McReport mc_summary(std::span<const double> diffs, std::uint64_t seed, double k_sigma, double scale) {
  McReport r;
  r.seed = seed;
  r.n = diffs.size();
  if (diffs.empty()) throw ConfigError("Monte Carlo comparison needs at least one sample");
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= static_cast<double>(diffs.size());
  double var = 0.0;
  for (double d : diffs) var += (d - mean) * (d - mean);
  var = diffs.size() > 1 ? var / static_cast<double>(diffs.size() - 1) : 0.0;
  r.statistic = mean;
  r.stderr_value = std::sqrt(var / static_cast<double>(diffs.size()));
  r.tolerance = k_sigma * r.stderr_value + 64.0 * std::numeric_limits<double>::epsilon() * scale;
  r.pass = std::abs(mean) <= r.tolerance;
  return r;
}

McReport mc_compare(const ChaosExpansion& f, std::span<const double> oracle, const SampleBatch& batch,
                    double k_sigma) {
  if (oracle.size() != batch.n_samples) throw DimensionError("one oracle value per sample is required");
  if (batch.modes < f.truncation().modes) throw DimensionError("batch has fewer modes than the expansion");
  const ChaosEvaluator eval(f);
  std::vector<double> diffs(batch.n_samples);
  detail::parallel_for(batch.n_samples, [&](std::size_t i) { diffs[i] = eval(batch.row(i)) - oracle[i]; });
  double scale = 0.0;
  for (double v : oracle) scale += std::abs(v);
  return mc_summary(diffs, batch.seed, k_sigma, scale / static_cast<double>(oracle.size()));
}

}  // namespace chaosint
