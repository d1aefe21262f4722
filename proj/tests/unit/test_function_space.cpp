#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "chaosint/basis.hpp"
#include "chaosint/errors.hpp"
#include "chaosint/function_space.hpp"
#include "chaosint/quadrature.hpp"

using namespace chaosint;

class BasisTest : public ::testing::TestWithParam<BasisKind> {};

TEST_P(BasisTest, OrthonormalUpTo32Modes) {
  for (double horizon : {0.5, 1.0, 2.0}) {
    const BasisFamily b(GetParam(), horizon);
    const auto rule = QuadratureRule::composite(16, 24);
    for (unsigned k = 1; k <= 32; ++k)
      for (unsigned j = k; j <= 32; ++j) {
        const double ip = inner_product([&](double t) { return b.eval(k, t); },
                                        [&](double t) { return b.eval(j, t); }, horizon, rule);
        ASSERT_NEAR(ip, k == j ? 1.0 : 0.0, 1e-10) << "k=" << k << " j=" << j << " T=" << horizon;
      }
  }
}

TEST_P(BasisTest, AntiderivativeMatchesQuadrature) {
  const BasisFamily b(GetParam(), 1.5);
  for (unsigned k = 1; k <= 12; ++k)
    for (double t : {0.0, 0.3, 1.1, 1.5}) {
      const double q = integrate([&](double s) { return b.eval(k, s); }, 0.0, t, QuadratureRule::composite(4, 20));
      EXPECT_NEAR(b.antideriv(k, t), q, 1e-12);
    }
  EXPECT_NEAR(b.antideriv(1, 1.5), std::sqrt(1.5), 1e-14);
  EXPECT_NEAR(b.antideriv(5, 1.5), 0.0, 1e-14);
}

TEST_P(BasisTest, ParsevalForIndicatorIsMonotone) {
  // ||chi_t||^2 = t and the partial sums of M_k(t)^2 increase toward it.
  const BasisFamily b(GetParam(), 1.0);
  const double t = 0.37;
  double partial = 0.0, previous = 0.0;
  for (unsigned k = 1; k <= 256; ++k) {
    partial += std::pow(b.antideriv(k, t), 2);
    ASSERT_GE(partial, previous);
    ASSERT_LE(partial, t + 1e-12);
    previous = partial;
  }
  EXPECT_LE(t - partial, 1.0 / 256);
}

TEST_P(BasisTest, DomainChecks) {
  const BasisFamily b(GetParam(), 1.0);
  EXPECT_THROW(b.eval(0, 0.5), DomainError);
  EXPECT_THROW(b.eval(1, -0.1), DomainError);
  EXPECT_THROW(b.antideriv(2, 1.5), DomainError);
  EXPECT_THROW(BasisFamily(GetParam(), 0.0), DomainError);
}

INSTANTIATE_TEST_SUITE_P(Families, BasisTest, ::testing::Values(BasisKind::cosine, BasisKind::legendre),
                         [](const auto& info) { return to_string(info.param); });

TEST(Basis, ParseNames) {
  EXPECT_EQ(parse_basis_kind("cosine"), BasisKind::cosine);
  EXPECT_EQ(parse_basis_kind("legendre"), BasisKind::legendre);
  EXPECT_THROW(parse_basis_kind("haar"), ConfigError);
}

TEST(Basis, IntegrationByPartsAgainstAntiderivative) {
  // int_0^T f m_k = f(T) M_k(T) - int_0^T f' M_k, with f = exp.
  const BasisFamily b = BasisFamily::cosine(1.0);
  for (unsigned k = 1; k <= 6; ++k) {
    const double lhs = inner_product([](double t) { return std::exp(t); }, [&](double t) { return b.eval(k, t); }, 1.0);
    const double rhs = std::exp(1.0) * b.antideriv(k, 1.0) -
                       integrate([&](double t) { return std::exp(t) * b.antideriv(k, t); }, 0.0, 1.0);
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(Quadrature, GaussLegendreExactForPolynomials) {
  const auto& gl = gauss_legendre(8);
  for (int p = 0; p <= 15; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], p);
    EXPECT_NEAR(s, p % 2 ? 0.0 : 2.0 / (p + 1), 1e-14) << p;
  }
}

TEST(Quadrature, GaussJacobiMatchesBetaFunction) {
  for (double left : {-0.25, 0.0, 0.5})
    for (double right : {-0.75, -0.2, 1.0}) {
      const auto r = gauss_jacobi01(24, left, right);
      for (int p = 0; p <= 6; ++p) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
        const double beta = std::exp(std::lgamma(left + p + 1) + std::lgamma(right + 1) - std::lgamma(left + right + p + 2));
        EXPECT_NEAR(s, beta, 1e-12 * beta);
      }
    }
}

TEST(Quadrature, SingularEndpointExamples) {
  // int_0^1 tau^{-1/2} d tau = 2 and int_0^1 tau^{-0.9} cos(tau) against tanh-sinh.
  EXPECT_NEAR(quad_singular([](double) { return 1.0; }, 0.0, 1.0, -0.5), 2.0, 1e-12);
  boost::math::quadrature::tanh_sinh<double> ts;
  const double ref = ts.integrate([](double x) { return std::pow(x, -0.9) * std::cos(x); }, 0.0, 1.0);
  EXPECT_NEAR(quad_singular([](double x) { return std::cos(x); }, 0.0, 1.0, -0.9), ref, 1e-9);
  const double ref_up = ts.integrate([](double x) { return std::pow(2.0 - x, -0.3) * std::exp(x); }, 0.5, 2.0);
  EXPECT_NEAR(quad_singular_upper([](double x) { return std::exp(x); }, 0.5, 2.0, -0.3), ref_up, 1e-9);
  EXPECT_THROW(quad_singular([](double) { return 1.0; }, 0.0, 1.0, -1.0), NonIntegrable);
}

TEST(Quadrature, AdaptiveConverges) {
  const double v = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, QuadratureRule::composite(2, 8));
  EXPECT_NEAR(v, 2.0 / 3.0, 1e-7);
}

TEST(StepFunction, EvaluationAndValidation) {
  const StepFunction f({0.0, 0.5, 1.0}, {2.0, -1.0});
  EXPECT_EQ(f(0.0), 0.0);
  EXPECT_EQ(f(0.25), 2.0);
  EXPECT_EQ(f(0.5), 2.0);
  EXPECT_EQ(f(0.75), -1.0);
  EXPECT_EQ(f(1.5), 0.0);
  EXPECT_THROW(StepFunction({0.0, 1.0}, {1.0, 2.0}), DimensionError);
  EXPECT_THROW(StepFunction({0.0, 1.0, 0.5}, {1.0, 2.0}), DomainError);
  const auto chi = StepFunction::indicator(0.3);
  EXPECT_EQ(chi(0.3), 1.0);
  EXPECT_EQ(chi(0.31), 0.0);
}

TEST(Localization, CoefficientsOfIndicatorProducts) {
  const BasisFamily b = BasisFamily::legendre(1.0);
  // (chi_t, m_k) = M_k(t)
  for (unsigned k = 1; k <= 5; ++k)
    EXPECT_NEAR(localize_coeff([](double) { return 1.0; }, 0.6, k, b), b.antideriv(k, 0.6), 1e-13);
  const auto g = localization_gram(b, 4, 1.0);
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 4; ++j) EXPECT_NEAR(g[i * 4 + j], i == j ? 1.0 : 0.0, 1e-13);
  const auto g0 = localization_gram(b, 3, 0.0);
  for (double v : g0) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(localize_coeff([](double) { return 1.0; }, 1.5, 1, b), DomainError);
}
