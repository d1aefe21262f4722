#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "chaosint/basis.hpp"
#include "chaosint/errors.hpp"
#include "chaosint/fbm.hpp"
#include "chaosint/kernel.hpp"
#include "chaosint/monte_carlo.hpp"

using namespace chaosint;

TEST(Sampling, ReproducibleAndPrefixStable) {
  const auto a = sample_batch(42, 100, 3), b = sample_batch(42, 100, 3), c = sample_batch(42, 250, 3);
  EXPECT_EQ(a.z, b.z);
  EXPECT_TRUE(std::equal(a.z.begin(), a.z.end(), c.z.begin()));
  const auto d = sample_batch(43, 100, 3);
  EXPECT_NE(a.z, d.z);
  EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
  EXPECT_THROW(sample_batch(1, 0, 3), ConfigError);
}

TEST(Sampling, MomentsAndIndependence) {
  const std::size_t n = 40000;
  const auto a = sample_batch(7, n, 2), b = sample_batch(8, n, 2);
  double m = 0, v = 0, cross_mode = 0, cross_seed = 0, m3 = 0, m4 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a.z[2 * i], y = a.z[2 * i + 1];
    m += x;
    v += x * x;
    m3 += x * x * x;
    m4 += x * x * x * x;
    cross_mode += x * y;
    cross_seed += x * b.z[2 * i];
  }
  const double se = 1.0 / std::sqrt(double(n));
  EXPECT_NEAR(m / n, 0.0, 5 * se);
  EXPECT_NEAR(v / n, 1.0, 5 * std::sqrt(2.0) * se);
  EXPECT_NEAR(m3 / n, 0.0, 5 * std::sqrt(15.0) * se);
  EXPECT_NEAR(m4 / n, 3.0, 5 * std::sqrt(96.0) * se);
  EXPECT_NEAR(cross_mode / n, 0.0, 5 * se);
  EXPECT_NEAR(cross_seed / n, 0.0, 5 * se);
}

TEST(Paths, BrownianStartsAtZeroWithUnitVariance) {
  const BasisFamily b = BasisFamily::cosine(1.0);
  const auto grid = TimeGrid::uniform(1.0, 8);
  const PathSynthesizer synth(BrownianKernel{}, b, 16, grid);
  const auto batch = sample_batch(3, 20000, 16);
  double end_var = 0.0;
  for (std::size_t i = 0; i < batch.n_samples; ++i) {
    const auto p = synth.path(batch.row(i));
    ASSERT_EQ(p.size(), 9u);
    ASSERT_EQ(p.front(), 0.0);
    end_var += p.back() * p.back();
  }
  EXPECT_NEAR(end_var / batch.n_samples, 1.0, 5 * std::sqrt(2.0 / batch.n_samples));
  // Exact variance of the truncated path: sum of squared antiderivatives.
  double mid = 0.0;
  for (unsigned k = 1; k <= 16; ++k) mid += std::pow(b.antideriv(k, 0.5), 2);
  double row_sum = 0.0;
  for (double m : synth.m_tilde()[4]) row_sum += m * m;
  EXPECT_NEAR(row_sum, mid, 1e-12);
}

TEST(Paths, FbmIncrementsAreGaussian) {
  const BasisFamily b = BasisFamily::cosine(1.0);
  const auto grid = TimeGrid::uniform(1.0, 4);
  const PathSynthesizer synth(FbmKernel(0.75), b, 32, grid);
  const auto batch = sample_batch(11, 20000, 32);
  double s2 = 0, s3 = 0, s4 = 0;
  for (std::size_t i = 0; i < batch.n_samples; ++i) {
    const auto p = synth.path(batch.row(i));
    const double d = p[2] - p[1];
    s2 += d * d;
    s3 += d * d * d;
    s4 += d * d * d * d;
  }
  const double n = batch.n_samples;
  const double var = s2 / n;
  EXPECT_NEAR(s3 / n / std::pow(var, 1.5), 0.0, 0.1);
  EXPECT_NEAR(s4 / n / (var * var), 3.0, 0.2);
  // Truncation loses some variance of the increment, never adds any.
  EXPECT_LE(var, fbm_covariance(0.75, 0.25, 0.25) * (1 + 5 * std::sqrt(2.0 / n)));
  EXPECT_THROW(synth.path(std::vector<double>(3, 0.0)), DimensionError);
}

TEST(Paths, FreeFunctionMatchesSynthesizer) {
  const BasisFamily b = BasisFamily::legendre(1.0);
  const auto grid = TimeGrid::uniform(1.0, 4);
  const std::vector<double> z{0.3, -1.0, 0.5, 2.0};
  const PathSynthesizer synth(BrownianKernel{}, b, 4, grid);
  EXPECT_EQ(synthesize_path(BrownianKernel{}, b, {4, 2}, z, grid), synth.path(z));
}

TEST(DiscreteSums, SmallExample) {
  const std::vector<double> x{0.0, 1.0, 3.0}, y{0.0, 2.0, 1.0};
  EXPECT_EQ(discrete_ito(x, y), 0.0 * 2.0 + 1.0 * -1.0);
  EXPECT_EQ(discrete_strat(x, y), 0.5 * 2.0 + 2.0 * -1.0);
  // Midpoint sums of a path against itself telescope to x_N^2 / 2.
  EXPECT_EQ(discrete_strat(x, x), 4.5);
  EXPECT_THROW(discrete_ito(x, std::vector<double>{1.0}), DimensionError);
}

TEST(McCompare, ExactOracleAndDetectsBias) {
  const auto batch = sample_batch(1, 2000, 2);
  ChaosExpansion f({2, 1});
  f.set(MultiIndex::unit(1), 2.0);
  f.set(MultiIndex{}, 0.5);
  std::vector<double> exact(batch.n_samples), biased(batch.n_samples);
  for (std::size_t i = 0; i < batch.n_samples; ++i) {
    exact[i] = 0.5 + 2.0 * batch.row(i)[0];
    biased[i] = exact[i] + 0.1 + 0.3 * batch.row(i)[1];
  }
  const auto ok = mc_compare(f, exact, batch);
  EXPECT_TRUE(ok.pass);
  EXPECT_LE(std::abs(ok.statistic), 1e-14);
  EXPECT_EQ(ok.n, 2000u);
  EXPECT_EQ(ok.seed, 1u);
  const auto bad = mc_compare(f, biased, batch);
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(bad.statistic, -0.1, 5 * bad.stderr_value);
  EXPECT_THROW(mc_compare(f, std::vector<double>(3, 0.0), batch), DimensionError);
}

TEST(McCompare, Summary) {
  const std::vector<double> d{1.0, 2.0, 3.0, 4.0};
  const auto r = mc_summary(d, 9, 2.0);
  EXPECT_EQ(r.statistic, 2.5);
  EXPECT_NEAR(r.stderr_value, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_NEAR(r.tolerance, 2.0 * r.stderr_value, 1e-15);
  EXPECT_FALSE(r.pass);
  EXPECT_THROW(mc_summary(std::vector<double>{}, 1), ConfigError);
}
