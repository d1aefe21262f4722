#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "chaosint/basis.hpp"
#include "chaosint/covariance.hpp"
#include "chaosint/errors.hpp"
#include "chaosint/fbm.hpp"
#include "chaosint/function_space.hpp"
#include "chaosint/kernel.hpp"
#include "chaosint/kernel_ops.hpp"

using namespace chaosint;

namespace {

// Direct double-exponential evaluation of the fBm kernel integral.
double kernel_oracle(double h, double t, double s) {
  const double a = h - 0.5;
  const double ch = std::sqrt(2 * h * std::tgamma(1.5 - h) / (std::tgamma(h + 0.5) * std::tgamma(2 - 2 * h)));
  boost::math::quadrature::tanh_sinh<double> ts;
  // The two-argument form passes the distance to the nearest endpoint, which
  // keeps tau - s exact where the integrand blows up.
  const double inner = ts.integrate(
      [&](double tau, double tau_c) {
        const double d = tau_c < 0 ? -tau_c : tau - s;
        return std::pow(d, a - 1) * std::pow(tau, a);
      },
      s, t);
  return ch * a * std::pow(s, -a) * inner;
}

KernelPtr fbm(double h) { return std::make_shared<FbmKernel>(h); }

}  // namespace

TEST(Fbm, KernelAgainstTanhSinh) {
  EXPECT_NEAR(fbm_kernel(0.75, 1.0, 0.5), kernel_oracle(0.75, 1.0, 0.5), 1e-8);
  for (double h : {0.55, 0.7, 0.9})
    for (auto [t, s] : {std::pair{1.0, 0.01}, {1.0, 0.99}, {2.0, 0.7}, {0.3, 0.1}})
      EXPECT_NEAR(fbm_kernel(h, t, s), kernel_oracle(h, t, s), 1e-8 * std::max(1.0, kernel_oracle(h, t, s)))
          << h << " " << t << " " << s;
  EXPECT_EQ(fbm_kernel(0.75, 0.5, 0.7), 0.0);
}

TEST(Fbm, ConstantAndK1) {
  // H = 3/4: C_H^2 = 1.5 Gamma(3/4) / (Gamma(5/4) Gamma(1/2))
  EXPECT_NEAR(fbm_c_h(0.75), std::sqrt(1.5 * std::tgamma(0.75) / (std::tgamma(1.25) * std::sqrt(M_PI))), 1e-14);
  for (double h : {0.6, 0.75, 0.9})
    for (double T : {0.5, 1.0, 2.0}) {
      const double gamma_form = h * (2 * h - 1) * std::tgamma(h - 0.5) / std::tgamma(h + 0.5) * std::pow(T, 2 * h - 1);
      EXPECT_NEAR(fbm_k1(h, T), gamma_form, 1e-13 * gamma_form);
    }
  EXPECT_NEAR(fbm_k1(0.75, 1.0), 1.5, 1e-14);
  EXPECT_THROW(check_hurst(0.5), DomainError);
  EXPECT_THROW(check_hurst(1.0), DomainError);
  EXPECT_THROW(FbmKernel(0.3), DomainError);
}

TEST(Fbm, TimeDerivativeByFiniteDifference) {
  for (double h : {0.6, 0.8})
    for (auto [t, s] : {std::pair{1.0, 0.3}, {0.7, 0.05}, {1.5, 1.2}}) {
      const double d = 1e-5;
      const double fd = (fbm_kernel(h, t + d, s) - fbm_kernel(h, t - d, s)) / (2 * d);
      EXPECT_NEAR(fbm_kernel_dt(h, t, s), fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST(Fbm, KernelCovarianceReproducesClosedForm) {
  const FbmKernel k(0.7);
  for (auto [t, s] : {std::pair{1.0, 1.0}, {1.0, 0.4}, {0.25, 0.8}}) {
    EXPECT_NEAR(covariance_from_kernel(k, t, s), fbm_covariance(0.7, t, s), 1e-8);
  }
  EXPECT_NEAR(fbm_covariance(0.7, 1.0, 1.0), 1.0, 0);
}

TEST(KStar, BrownianIsIdentity) {
  const auto k = std::make_shared<BrownianKernel>();
  const auto f = kstar_apply(k, [](double s) { return std::sin(3 * s) + 0.5; }, 1.0);
  for (double s : {0.0, 0.2, 0.77, 1.0}) EXPECT_NEAR(f(s), std::sin(3 * s) + 0.5, 1e-15);
}

TEST(KStar, ConstantMapsToKernelRow) {
  const auto k = fbm(0.75);
  const auto f = kstar_apply(k, [](double) { return 1.0; }, 1.0);
  for (double s : {0.01, 0.3, 0.6, 0.95}) EXPECT_NEAR(f(s), fbm_kernel(0.75, 1.0, s), 1e-7);
}

TEST(KStar, StepFormulaOnIndicatorsIsKernelRow) {
  const auto k = fbm(0.65);
  const auto f = kstar_apply_step(k, StepFunction::indicator(0.6));
  for (double s : {0.05, 0.3, 0.59}) EXPECT_NEAR(f(s), fbm_kernel(0.65, 0.6, s), 1e-14);
  EXPECT_EQ(f(0.8), 0.0);
}

TEST(KStar, StepApproximationsConverge) {
  // Error <= C mesh; it is not monotone in the cell count because the probe
  // points sit at different offsets inside their cells.
  const auto k = fbm(0.75);
  const RealFunction g = [](double t) { return std::cos(2 * t); };
  const auto exact = kstar_apply(k, g, 1.0);
  for (int cells : {16, 64, 256, 1024}) {
    const auto approx = kstar_apply_step(k, StepFunction::sample_midpoints(g, 1.0, cells));
    for (double s : {0.1, 0.35, 0.6, 0.85}) EXPECT_LE(std::abs(approx(s) - exact(s)), 0.2 / cells) << cells << " " << s;
  }
}

TEST(KStar, GridKernelHasNoDerivative) {
  const auto grid = std::make_shared<GridKernel>(GridKernel::from_csv(std::string(CHAOSINT_TEST_DATA) + "/brownian_grid.csv"));
  EXPECT_THROW(kstar_apply(grid, [](double) { return 1.0; }, 1.0), UnsupportedKernel);
  EXPECT_THROW(grid->dt_eval(1.0, 0.5), UnsupportedKernel);
}

TEST(Adjoint, IntegratesToKernelRowPairing) {
  // int_0^t (K g)(r) dr = int_0^t K(t, s) g(s) ds
  const FbmKernel k(0.8);
  const RealFunction g = [](double s) { return 1.0 + s * s; };
  const double t = 0.9;
  const auto rule = QuadratureRule::singular(8, 16, 30);
  const auto pts = quadrature_points(0.0, t, rule);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < pts.nodes.size(); ++i) {
    lhs += pts.weights[i] * k.adjoint_apply(g, pts.nodes[i], rule);
    rhs += pts.weights[i] * k.eval(t, pts.nodes[i]) * g(pts.nodes[i]);
  }
  EXPECT_NEAR(lhs, rhs, 1e-6 * std::abs(rhs));
}

TEST(K1, EmpiricalBelowAnalyticBoundAndMonotone) {
  for (double h : {0.6, 0.75, 0.9}) {
    const FbmKernel k(h);
    double previous = 0.0;
    for (double T : {0.5, 1.0, 2.0}) {
      const double emp = k1_empirical(k, T, 64);
      EXPECT_LE(emp, fbm_k1(h, T) * (1 + 1e-9)) << h << " " << T;
      EXPECT_GT(emp, previous);
      previous = emp;
    }
  }
}

TEST(K1, BrownianIsZero) {
  EXPECT_EQ(k1_empirical(BrownianKernel{}, 1.0, 16), 0.0);
  EXPECT_NEAR(op_norm_bound(1.0, 0.0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(op_norm_bound(0.0, 1.5), std::sqrt(1.5), 1e-15);
  EXPECT_THROW(op_norm_bound(-1.0, 0.0), DomainError);
}

TEST(OperatorNorm, BrownianUnitAndFbmBelowBound) {
  EXPECT_NEAR(op_norm_estimate(BrownianKernel{}, 1.0, 64), 1.0, 1e-6);
  const FbmKernel k(0.75);
  const double est = op_norm_estimate(k, 1.0, 64);
  EXPECT_GT(est, 0.5);
  EXPECT_LE(est, op_norm_bound(0.0, fbm_k1(0.75, 1.0)));
}

TEST(Covariance, ClosedFormsAndGram) {
  const auto bw = brownian_covariance();
  EXPECT_EQ(bw(0.3, 0.7), 0.3);
  const auto fc = fbm_covariance_function(0.8);
  const std::vector<double> times{0.1, 0.4, 0.7, 1.0};
  const auto g = hr_gram(fc, times);
  ASSERT_EQ(g.rows(), 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(g(i, j), fbm_covariance(0.8, times[i], times[j]));
  const auto l = white_noise_factor(g);
  EXPECT_LE((l * l.transpose() - g).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Covariance, InvalidMatricesRejected) {
  const CovarianceFunction bad{"bad", [](double t, double s) { return t == s ? 1.0 : 2.0; }};
  EXPECT_THROW(hr_gram(bad, {0.1, 0.2}), InvalidCovariance);
  const CovarianceFunction skew{"skew", [](double t, double s) { return t + 2 * s; }};
  EXPECT_THROW(hr_gram(skew, {0.1, 0.2}), InvalidCovariance);
  // Degenerate but valid: the time 0 row vanishes.
  EXPECT_NO_THROW(hr_gram(brownian_covariance(), {0.0, 0.5, 1.0}));
}

TEST(Covariance, KernelQuadratureAgreesWithBrownian) {
  const auto kc = kernel_covariance(std::make_shared<BrownianKernel>());
  EXPECT_NEAR(kc(0.3, 0.8), 0.3, 1e-14);
}

TEST(MTilde, BrownianIsAntiderivative) {
  const BasisFamily b = BasisFamily::cosine(1.0);
  const BrownianKernel k;
  const std::vector<double> times{0.0, 0.25, 0.6, 1.0};
  const auto table = m_tilde_table(k, b, 6, times);
  for (std::size_t i = 0; i < times.size(); ++i)
    for (unsigned kk = 1; kk <= 6; ++kk) {
      EXPECT_NEAR(table[i][kk - 1], b.antideriv(kk, times[i]), 1e-12);
      EXPECT_NEAR(m_tilde(k, b, kk, times[i]), b.antideriv(kk, times[i]), 1e-12);
    }
}

TEST(MTilde, TableMatchesPointwiseForFbm) {
  const BasisFamily b = BasisFamily::legendre(1.0);
  const FbmKernel k(0.7);
  const std::vector<double> times{0.2, 0.5, 1.0};
  const auto table = m_tilde_table(k, b, 5, times);
  for (std::size_t i = 0; i < times.size(); ++i)
    for (unsigned kk = 1; kk <= 5; ++kk) EXPECT_NEAR(table[i][kk - 1], m_tilde(k, b, kk, times[i]), 1e-10);
  EXPECT_THROW(m_tilde(k, b, 1, 1.2), DomainError);
}

namespace {

double parseval_gap(BasisKind kind, unsigned modes) {
  const BasisFamily b(kind, 1.0);
  const FbmKernel k(0.75);
  const std::vector<double> times{1.0 / 3, 2.0 / 3, 1.0};
  const auto table = m_tilde_table(k, b, modes, times);
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = 0; j < times.size(); ++j) {
      double s = 0.0;
      for (unsigned kk = 0; kk < modes; ++kk) s += table[i][kk] * table[j][kk];
      worst = std::max(worst, std::abs(s - covariance_from_kernel(k, times[i], times[j])));
    }
  return worst;
}

}  // namespace

TEST(MTilde, PartialSumsApproachCovariance) {
  EXPECT_LE(parseval_gap(BasisKind::legendre, 64), 5e-3);
  // The cosine tail of K(T, .) decays slowly; the (T, T) entry sits just above 5e-3 at K = 64.
  const double g16 = parseval_gap(BasisKind::cosine, 16), g64 = parseval_gap(BasisKind::cosine, 64);
  EXPECT_LT(g64, g16);
  EXPECT_LE(g64, 6e-3);
}

TEST(GridKernel, CsvInterpolation) {
  const auto g = GridKernel::from_csv(std::string(CHAOSINT_TEST_DATA) + "/brownian_grid.csv");
  EXPECT_EQ(g.t_grid().size(), 9u);
  EXPECT_TRUE(g.adapted());
  EXPECT_EQ(g.eval(0.5, 0.25), 1.0);
  EXPECT_EQ(g.eval(0.25, 0.5), 0.0);
  const auto lin = GridKernel::from_csv_string("t\\s,0,1\n0,0,1\n1,2,3\n");
  EXPECT_NEAR(lin.eval(0.5, 0.5), 1.5, 1e-15);
  EXPECT_FALSE(lin.adapted());
  EXPECT_THROW(GridKernel::from_csv_string("t\\s,0,1\n0,1\n"), ConfigError);
  EXPECT_THROW(GridKernel::from_csv_string("t\\s,0,1\n0,a,1\n1,2,3\n"), ConfigError);
  EXPECT_THROW(GridKernel::from_csv("/nonexistent.csv"), ConfigError);
}

TEST(MakeKernel, Names) {
  EXPECT_EQ(make_kernel("brownian")->name(), "brownian");
  EXPECT_EQ(make_kernel("fbm", 0.6)->name(), "fbm");
  EXPECT_THROW(make_kernel("fbm", 1.2), DomainError);
  EXPECT_THROW(make_kernel("levy"), ConfigError);
  EXPECT_THROW(make_kernel("custom-grid"), ConfigError);
}
