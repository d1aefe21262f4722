#include "chaosint/verify.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "chaosint/basis.hpp"
#include "chaosint/chaos_expansion.hpp"
#include "chaosint/covariance.hpp"
#include "chaosint/errors.hpp"
#include "chaosint/fbm.hpp"
#include "chaosint/hermite.hpp"
#include "chaosint/integrals.hpp"
#include "chaosint/kernel.hpp"
#include "chaosint/kernel_ops.hpp"
#include "chaosint/monte_carlo.hpp"
#include "chaosint/quadrature.hpp"
#include "chaosint/sde.hpp"

namespace chaosint::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double factorial(unsigned n) { return std::tgamma(n + 1.0); }

// M_k(T) from the textbook antiderivatives, written out independently of BasisFamily.
std::vector<double> endpoint_antiderivs(BasisKind kind, unsigned modes, double horizon) {
  std::vector<double> m(modes, 0.0);
  m[0] = std::sqrt(horizon);
  if (kind == BasisKind::cosine)
    for (unsigned k = 2; k <= modes; ++k) {
      const double w = (k - 1) * std::numbers::pi / horizon;
      m[k - 1] = std::sqrt(2.0 / horizon) * std::sin(w * horizon) / w;
    }
  // Legendre: int_{-1}^{1} P_n = 0 for n >= 1.
  return m;
}

// Chaos coefficients of (W_K(T)^2 - s_K) / 2, or W_K(T)^2 / 2 when `with_mean`,
// for W_K(T) = sum_k M_k(T) xi_k: xi_k^2 = sqrt(2) xi_{2 eps_k} + 1.
ChaosExpansion w_square_half(const std::vector<double>& m, bool with_mean) {
  const auto modes = static_cast<std::uint32_t>(m.size());
  ChaosExpansion out({modes, 2});
  double s_k = 0.0;
  for (std::uint32_t k = 1; k <= modes; ++k) {
    s_k += m[k - 1] * m[k - 1];
    out.add(MultiIndex::unit(k, 2), m[k - 1] * m[k - 1] / std::numbers::sqrt2);
    for (std::uint32_t j = 1; j < k; ++j)
      out.add(MultiIndex::from_entries({{j, 1}, {k, 1}}), m[j - 1] * m[k - 1]);
  }
  if (with_mean) out.add(MultiIndex{}, s_k / 2.0);
  return out;
}

ChaosExpansion random_expansion(const Truncation& trunc, std::uint32_t max_order, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ChaosExpansion f(trunc);
  for (const auto& a : enumerate_multiindices(trunc.with_order(max_order))) f.set(a, u(rng));
  return f;
}

std::string sci(double v) { return fmt::format("{:.3g}", v); }

}  // namespace

CriterionResult hermite_orthogonality() {
  const auto start = Clock::now();
  CriterionResult r{"1", "Hermite orthogonality E[H_n H_m] = n! delta_nm, n, m <= 10"};
  const NodeRule& gh = gauss_hermite(64);
  double worst = 0.0;
  for (unsigned n = 0; n <= 10; ++n)
    for (unsigned m = 0; m <= 10; ++m) {
      double e = 0.0;
      for (std::size_t i = 0; i < gh.nodes.size(); ++i) e += gh.weights[i] * hermite(n, gh.nodes[i]) * hermite(m, gh.nodes[i]);
      const double err = n == m ? std::abs(e - factorial(n)) / factorial(n)
                                : std::abs(e) / std::sqrt(factorial(n) * factorial(m));
      worst = std::max(worst, err);
    }
  const double secs = seconds_since(start);
  r.pass = worst <= 1e-8 && secs < 1.0;
  r.detail = fmt::format("max relative error {} (tol 1e-08), runtime below 1 s: {}", sci(worst), secs < 1.0);
  r.data = Json{{"max_rel_error", worst}, {"tolerance", 1e-8}};
  return r;
}

CriterionResult wick_hermite_identity() {
  CriterionResult r{"2", "Wick identity H_n <> H_m = H_{n+m}, n + m <= 12"};
  const Truncation tr{1, 12};
  double worst = 0.0;
  double dropped = 0.0;
  for (unsigned n = 0; n <= 12; ++n)
    for (unsigned m = 0; n + m <= 12; ++m) {
      ChaosExpansion f(tr), g(tr), expected(tr);
      f.set(MultiIndex::unit(1, n), std::sqrt(factorial(n)));
      g.set(MultiIndex::unit(1, m), std::sqrt(factorial(m)));
      expected.set(MultiIndex::unit(1, n + m), std::sqrt(factorial(n + m)));
      const WickResult p = wick_product(f, g);
      worst = std::max(worst, max_abs_diff(p.product, expected) / std::sqrt(factorial(n + m)));
      dropped = std::max(dropped, p.dropped_mass);
    }
  r.pass = worst <= 1e-12 && dropped == 0.0;
  r.detail = fmt::format("max relative coefficient error {} (tol 1e-12)", sci(worst));
  r.data = Json{{"max_rel_error", worst}, {"tolerance", 1e-12}};
  return r;
}

CriterionResult wick_algebra_laws() {
  CriterionResult r{"A", "Wick algebra: commutativity, associativity, distributivity, unit"};
  std::mt19937_64 rng(7);
  const Truncation tr{3, 6};
  const auto f = random_expansion(tr, 2, rng);
  const auto g = random_expansion(tr, 2, rng);
  const auto h = random_expansion(tr, 2, rng);
  const auto wp = [](const ChaosExpansion& a, const ChaosExpansion& b) { return wick_product(a, b).product; };
  const double comm = max_abs_diff(wp(f, g), wp(g, f));
  const double assoc = max_abs_diff(wp(wp(f, g), h), wp(f, wp(g, h)));
  const double dist = max_abs_diff(wp(f, g + h), wp(f, g) + wp(f, h));
  const double unit = max_abs_diff(wp(f, ChaosExpansion::constant(tr, 2.5)), 2.5 * f);
  const double worst = std::max({comm, assoc, dist, unit});
  r.pass = worst <= 1e-12;
  r.detail = fmt::format("commutativity {}, associativity {}, distributivity {}, constants {} (tol 1e-12)", sci(comm),
                         sci(assoc), sci(dist), sci(unit));
  r.data = Json{{"commutativity", comm}, {"associativity", assoc}, {"distributivity", dist}, {"unit", unit}};
  return r;
}

CriterionResult ito_identity() {
  CriterionResult r{"3", "Truncated Ito identity and isometry, K = 16, T = 1"};
  const auto basis = BasisFamily::cosine(1.0);
  const auto m = endpoint_antiderivs(BasisKind::cosine, 16, 1.0);
  const ChaosExpansion ito = ito_integral(brownian_path_integrand(basis, {16, 1}));
  const double coeff_err = max_abs_diff(ito, w_square_half(m, false));
  double s_k = 0.0;
  for (double v : m) s_k += v * v;
  const double iso_err = std::abs(ito.norm_sq() - s_k * s_k / 2.0);
  r.pass = coeff_err <= 1e-10 && iso_err <= 1e-10;
  r.detail = fmt::format("coefficient error {}, isometry error {} (tol 1e-10)", sci(coeff_err), sci(iso_err));
  r.data = Json{{"coefficient_error", coeff_err}, {"isometry_error", iso_err}, {"tolerance", 1e-10}};
  return r;
}

CriterionResult strat_identity() {
  CriterionResult r{"4", "Truncated Stratonovich identity and Malliavin trace relation"};
  const auto basis = BasisFamily::cosine(1.0);
  const auto m = endpoint_antiderivs(BasisKind::cosine, 16, 1.0);
  const HValuedChaos w = brownian_path_integrand(basis, {16, 1});
  const ChaosExpansion strat = strat_integral(w);
  const double coeff_err = max_abs_diff(strat, w_square_half(m, true));
  // The trace relation on W_K and on a dense random integrand.
  double trace_err = max_abs_diff(strat, strat_via_trace(w));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HValuedChaos eta({4, 3});
  for (const auto& a : enumerate_multiindices({4, 3}))
    for (std::uint32_t k = 1; k <= 4; ++k) eta.set(a, k, u(rng));
  trace_err = std::max(trace_err, max_abs_diff(strat_integral(eta), strat_via_trace(eta)));
  r.pass = coeff_err <= 1e-10 && trace_err <= 1e-14;
  r.detail = fmt::format("coefficient error {} (tol 1e-10), strat - (ito + trace) {} (tol 1e-14)", sci(coeff_err),
                         sci(trace_err));
  r.data = Json{{"coefficient_error", coeff_err}, {"trace_relation_error", trace_err}};
  return r;
}

CriterionResult fbm_bound() {
  const auto start = Clock::now();
  CriterionResult r{"5", "fBm bound K1: analytic value, empirical sup, H -> 1/2 limit"};
  const double k1 = fbm_k1(0.75, 1.0);
  bool ok = k1 == 1.5;
  Json emp = Json::object();
  std::string parts;
  for (double h : {0.6, 0.75, 0.9}) {
    const double e = k1_empirical(FbmKernel(h), 1.0);
    const double bound = fbm_k1(h, 1.0);
    ok = ok && e <= bound + 1e-6;
    emp[fmt::format("{}", h)] = Json{{"empirical", e}, {"bound", bound}};
    parts += fmt::format(" H={}: {:.6f} <= {:.6f};", h, e, bound);
  }
  const double limit = fbm_k1(0.5 + 1e-3, 1.0);
  ok = ok && std::abs(limit - 1.0) <= 1e-2;
  const double secs = seconds_since(start);
  r.pass = ok && secs < 10.0;
  r.detail = fmt::format("K1(0.75, 1) = {};{} K1(0.501, 1) = {:.6f}; runtime below 10 s: {}", format_double(k1), parts,
                         limit, secs < 10.0);
  r.data = Json{{"k1", k1}, {"empirical", emp}, {"k1_near_half", limit}};
  return r;
}

CriterionResult operator_norm() {
  CriterionResult r{"6", "Operator norm estimate vs bound on 512-point grids"};
  const double b_est = op_norm_estimate(BrownianKernel(), 1.0, 512);
  const double b_bound = op_norm_bound(1.0, 0.0);
  const double f_est = op_norm_estimate(FbmKernel(0.75), 1.0, 512);
  const double f_bound = op_norm_bound(0.0, fbm_k1(0.75, 1.0));
  r.pass = b_est <= b_bound && std::abs(b_est - 1.0) <= 1e-6 && f_est <= f_bound;
  r.detail = fmt::format("brownian {:.9f} <= {:.6f}; fbm(0.75) {:.9f} <= {:.6f}", b_est, b_bound, f_est, f_bound);
  r.data = Json{{"brownian", Json{{"estimate", b_est}, {"bound", b_bound}}},
                {"fbm", Json{{"estimate", f_est}, {"bound", f_bound}}}};
  return r;
}

CriterionResult covariance_oracle() {
  const auto start = Clock::now();
  CriterionResult r{"7", "fBm H = 0.7 kernel covariance vs closed form, 5 x 5 grid"};
  const FbmKernel kernel(0.7);
  double worst = 0.0;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      const double t = 0.2 * i, s = 0.2 * j;
      worst = std::max(worst, std::abs(covariance_from_kernel(kernel, t, s) - fbm_covariance(0.7, t, s)));
    }
  const double secs = seconds_since(start);
  r.pass = worst <= 1e-4 && secs < 30.0;
  r.detail = fmt::format("max abs error {} (tol 1e-04), runtime below 30 s: {}", sci(worst), secs < 30.0);
  r.data = Json{{"max_abs_error", worst}, {"tolerance", 1e-4}};
  return r;
}

CriterionResult wick_sde(const VerifyOptions& options) {
  CriterionResult r{"8", "Wick SDE: closed form vs Picard, second moment, Monte Carlo"};
  const auto basis = BasisFamily::cosine(1.0);
  const auto grid = TimeGrid::uniform(1.0, 256);
  const BrownianKernel bm;
  const FbmKernel fbm(0.75);
  bool ok = true;
  Json data = Json::object();
  std::string detail;
  for (const Kernel* k : {static_cast<const Kernel*>(&bm), static_cast<const Kernel*>(&fbm)}) {
    const double d = max_discrepancy(solve_closed_form(*k, basis, {8, 4}, grid), solve_picard(*k, basis, {8, 4}, grid));
    ok = ok && d <= 1e-8;
    data["picard_" + k->name()] = d;
    detail += fmt::format("closed vs Picard ({}) {}; ", k->name(), sci(d));
  }
  const auto sol8 = solve_closed_form(bm, basis, {8, 8}, grid);
  const double m2 = second_moment(sol8, 1.0);
  const double target = std::exp(covariance_from_kernel(bm, 1.0, 1.0));
  ok = ok && std::abs(m2 - target) <= 1e-3;
  data["second_moment"] = Json{{"value", m2}, {"target", target}};
  detail += fmt::format("E u(1)^2 = {:.6f} vs e^R = {:.6f}; ", m2, target);

  const auto batch = sample_batch(options.seed, options.samples, 8);
  const TimeGrid ends{{0.0, 1.0}};
  for (const Kernel* k : {static_cast<const Kernel*>(&bm), static_cast<const Kernel*>(&fbm)}) {
    const auto sol = solve_closed_form(*k, basis, {8, 12}, ends);
    const auto& mt = sol.m_tilde.back();
    double r_k = 0.0;
    for (double v : mt) r_k += v * v;
    std::vector<double> oracle(batch.n_samples);
    for (std::size_t i = 0; i < batch.n_samples; ++i) {
      const auto z = batch.row(i);
      double x = 0.0;
      for (unsigned j = 0; j < 8; ++j) x += mt[j] * z[j];
      oracle[i] = std::exp(x - 0.5 * r_k);
    }
    const McReport rep = mc_compare(sol.at(1), oracle, batch);
    ok = ok && rep.pass;
    data["mc_" + k->name()] = to_json(rep);
    detail += fmt::format("MC ({}) mean diff {} vs 3 stderr {}; ", k->name(), sci(rep.statistic), sci(rep.tolerance));
  }
  r.pass = ok;
  detail.resize(detail.size() - 2);
  r.detail = detail;
  r.data = std::move(data);
  return r;
}

CriterionResult mc_integrals(const VerifyOptions& options) {
  CriterionResult r{"9", "MC oracle: discrete Ito / Stratonovich sums on truncated paths, K = 16"};
  const auto basis = BasisFamily::cosine(1.0);
  const HValuedChaos w = brownian_path_integrand(basis, {16, 1});
  const PathSynthesizer synth(BrownianKernel(), basis, 16, TimeGrid::uniform(1.0, 512));
  const auto batch = sample_batch(options.seed, options.samples, 16);
  std::vector<double> ito(batch.n_samples), strat(batch.n_samples);
  for (std::size_t i = 0; i < batch.n_samples; ++i) {
    const auto x = synth.path(batch.row(i));
    ito[i] = discrete_ito(x, x);
    strat[i] = discrete_strat(x, x);
  }
  const McReport ri = mc_compare(ito_integral(w), ito, batch);
  const McReport rs = mc_compare(strat_integral(w), strat, batch);
  r.pass = ri.pass && rs.pass;
  r.detail = fmt::format("Ito: mean diff {} vs 3 stderr {} [{}]; Stratonovich: mean diff {} vs 3 stderr {} [{}]",
                         sci(ri.statistic), sci(ri.tolerance), ri.pass ? "pass" : "FAIL", sci(rs.statistic),
                         sci(rs.tolerance), rs.pass ? "pass" : "FAIL");
  r.data = Json{{"ito", to_json(ri)}, {"strat", to_json(rs)}};
  return r;
}

CriterionResult completed_path_ito(const VerifyOptions& options) {
  CriterionResult r{"9s", "supplementary: discrete Ito sum on Brownian-completed paths vs chaos Ito result"};
  const unsigned modes = 16;
  const int cells = 512;
  const auto basis = BasisFamily::cosine(1.0);
  const auto grid = TimeGrid::uniform(1.0, cells);
  const PathSynthesizer synth(BrownianKernel(), basis, modes, grid);
  // Covariance of W - W_K on t_1..t_M: min(t, s) - sum_k M_k(t) M_k(s).
  Eigen::MatrixXd rem(cells, cells);
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j) {
      double c = std::min(grid.points[i + 1], grid.points[j + 1]);
      for (unsigned k = 0; k < modes; ++k) c -= synth.m_tilde()[i + 1][k] * synth.m_tilde()[j + 1][k];
      rem(i, j) = c;
    }
  rem = 0.5 * (rem + rem.transpose());
  const Eigen::MatrixXd factor = white_noise_factor(rem);
  const auto batch = sample_batch(options.seed, options.samples, modes);
  const auto extra = sample_batch(stream_seed(options.seed, 0xC0FFEE), options.samples,
                                  static_cast<unsigned>(std::max<Eigen::Index>(factor.cols(), 1)));
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> g(
      extra.z.data(), static_cast<Eigen::Index>(extra.n_samples), static_cast<Eigen::Index>(extra.modes));
  const Eigen::MatrixXd remainder = factor * g.leftCols(factor.cols()).transpose();  // cells x n
  std::vector<double> oracle(batch.n_samples);
  for (std::size_t i = 0; i < batch.n_samples; ++i) {
    auto x = synth.path(batch.row(i));
    for (int j = 0; j < cells; ++j) x[j + 1] += remainder(j, static_cast<Eigen::Index>(i));
    oracle[i] = discrete_ito(x, x);
  }
  const McReport rep = mc_compare(ito_integral(brownian_path_integrand(basis, {modes, 1})), oracle, batch);
  r.pass = rep.pass;
  r.detail = fmt::format("mean diff {} vs 3 stderr {} (remainder rank {})", sci(rep.statistic), sci(rep.tolerance),
                         factor.cols());
  r.data = to_json(rep);
  return r;
}

CriterionResult basis_independence() {
  CriterionResult r{"10", "Basis independence of ito_integral(W_K): norm and third moment, K = 16"};
  double norm[2], third[2];
  int i = 0;
  for (const auto& basis : {BasisFamily::cosine(1.0), BasisFamily::legendre(1.0)}) {
    const ChaosExpansion f = ito_integral(brownian_path_integrand(basis, {16, 1}));
    norm[i] = f.norm_sq();
    third[i] = chaos_inner(chaos_product(f, f), f);
    ++i;
  }
  const double dn = std::abs(norm[0] - norm[1]);
  const double dt = std::abs(third[0] - third[1]);
  r.pass = dn <= 1e-6 && dt <= 1e-6;
  r.detail = fmt::format("norm^2 {:.12f} vs {:.12f}; E F^3 {:.12f} vs {:.12f} (tol 1e-06)", norm[0], norm[1], third[0],
                         third[1]);
  r.data = Json{{"norm_sq", Json::array({norm[0], norm[1]})}, {"third_moment", Json::array({third[0], third[1]})}};
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "integrals", "fbm", "sde", "mc"};
  return names;
}

namespace {

CriterionResult timed(const std::function<CriterionResult()>& f) {
  const auto start = Clock::now();
  CriterionResult r = f();
  r.seconds = seconds_since(start);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_suite(const std::string& name, const VerifyOptions& options) {
  std::vector<std::function<CriterionResult()>> checks;
  if (name == "algebra")
    checks = {hermite_orthogonality, wick_hermite_identity, wick_algebra_laws};
  else if (name == "integrals")
    checks = {ito_identity, strat_identity, basis_independence};
  else if (name == "fbm")
    checks = {fbm_bound, operator_norm, covariance_oracle};
  else if (name == "sde")
    checks = {[&] { return wick_sde(options); }};
  else if (name == "mc")
    checks = {[&] { return mc_integrals(options); }, [&] { return completed_path_ito(options); }};
  else
    throw ConfigError("unknown suite '" + name + "' (expected algebra, integrals, fbm, sde or mc)");
  std::vector<CriterionResult> out;
  for (const auto& c : checks) out.push_back(timed(c));
  return out;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options) {
  const std::vector<std::function<CriterionResult()>> checks{
      hermite_orthogonality,
      wick_hermite_identity,
      ito_identity,
      strat_identity,
      fbm_bound,
      operator_norm,
      covariance_oracle,
      [&] { return wick_sde(options); },
      [&] { return mc_integrals(options); },
      basis_independence,
      [&] { return completed_path_ito(options); },
      wick_algebra_laws,
  };
  std::vector<CriterionResult> out;
  for (const auto& c : checks) out.push_back(timed(c));
  return out;
}

Json report_json(const std::string& suite, const std::vector<CriterionResult>& results) {
  bool pass = true;
  Json items = Json::array();
  for (const auto& r : results) {
    pass = pass && r.pass;
    items.push_back(Json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
  }
  return Json{{"suite", suite}, {"pass", pass}, {"criteria", std::move(items)}};
}

}  // namespace chaosint::verify
