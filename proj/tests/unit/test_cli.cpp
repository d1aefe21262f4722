#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "chaosint/commands.hpp"
#include "chaosint/config.hpp"
#include "chaosint/errors.hpp"

using namespace chaosint;
using namespace chaosint::cli;

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("chaosint_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, DefaultsValidateAndRoundTrip) {
  ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.kernel = "fbm";
  c.hurst = 0.6;
  c.modes = 12;
  c.quadrature.nodes = 20;
  c.out = "results";
  EXPECT_EQ(config_from_json(config_to_json(c)), c);
  const auto path = scratch("roundtrip.json");
  save_config(c, path);
  EXPECT_EQ(load_config(path), c);
  fs::remove(path);
}

TEST(Config, FileValuesOverrideBaseOnlyWherePresent) {
  ExperimentConfig base;
  base.modes = 3;
  const auto c = config_from_json(Json::parse(R"({"kernel":"fbm","quadrature":{"nodes":8}})"), base);
  EXPECT_EQ(c.kernel, "fbm");
  EXPECT_EQ(c.modes, 3u);
  EXPECT_EQ(c.quadrature.nodes, 8);
  EXPECT_EQ(c.quadrature.panels, 8);
}

TEST(Config, Rejections) {
  EXPECT_THROW(config_from_json(Json::parse(R"({"kernal":"fbm"})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"quadrature":{"pannels":2}})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"modes":"many"})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse("[1,2]")), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
  auto check = [](auto mutate) {
    ExperimentConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), ConfigError);
  };
  check([](ExperimentConfig& c) { c.kernel = "levy"; });
  check([](ExperimentConfig& c) { c.kernel = "fbm", c.hurst = 0.5; });
  check([](ExperimentConfig& c) { c.kernel = "custom-grid"; });
  check([](ExperimentConfig& c) { c.horizon = 0.0; });
  check([](ExperimentConfig& c) { c.modes = 0; });
  check([](ExperimentConfig& c) { c.format = "xml"; });
  check([](ExperimentConfig& c) { c.basis = "haar"; });
}

TEST(Commands, HermiteJsonAndCsv) {
  ExperimentConfig c;
  std::ostringstream out;
  EXPECT_EQ(cmd_hermite(c, {3, -1.0, 1.0, 3}, out), exit_ok);
  const auto j = Json::parse(out.str());
  EXPECT_EQ(j["values"].size(), 12u);
  EXPECT_EQ(j["values"][11]["value"].get<double>(), -2.0);  // H_3(1) = 1 - 3
  EXPECT_NEAR(j["orthogonality"]["table"][3][3].get<double>(), 6.0, 1e-10);
  c.format = "csv";
  std::ostringstream csv;
  cmd_hermite(c, {1, 0.0, 0.0, 1}, csv);
  EXPECT_EQ(csv.str(), "n,t,value\n0,0,1\n1,0,0\n");
  EXPECT_THROW(cmd_hermite(c, {2, 1.0, -1.0, 3}, csv), ConfigError);
}

TEST(Commands, IntegrateBrownianPath) {
  ExperimentConfig c;
  c.modes = 4;
  c.order = 1;
  std::ostringstream out;
  EXPECT_EQ(cmd_integrate(c, {"w-path", "strat"}, out), exit_ok);
  const auto j = Json::parse(out.str());
  EXPECT_NEAR(j["mean"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j["result"]["trunc"]["max_order"], 2);
  EXPECT_THROW(cmd_integrate(c, {"w-path", "levy"}, out), ConfigError);
  EXPECT_THROW(cmd_integrate(c, {"/nonexistent.json", "ito"}, out), ConfigError);
  EXPECT_THROW(cmd_integrate(c, {std::string(CHAOSINT_TEST_DATA) + "/malformed.json", "ito"}, out), ConfigError);
}

TEST(Commands, IntegrateFromFileWritesOutputs) {
  ExperimentConfig c;
  const auto dir = scratch("integrate");
  c.out = dir.string();
  std::ostringstream out;
  cmd_integrate(c, {std::string(CHAOSINT_TEST_DATA) + "/integrand.json", "ito"}, out);
  EXPECT_TRUE(fs::exists(dir / "integral.json"));
  EXPECT_TRUE(fs::exists(dir / "integral.csv"));
  fs::remove_all(dir);
}

TEST(Commands, SdeOutputsAndDeterminism) {
  ExperimentConfig c;
  c.modes = 3;
  c.order = 3;
  c.grid = 4;
  std::ostringstream a, b;
  EXPECT_EQ(cmd_sde(c, {"ito"}, a), exit_ok);
  cmd_sde(c, {"ito"}, b);
  EXPECT_EQ(a.str(), b.str());
  const auto j = Json::parse(a.str());
  EXPECT_TRUE(j.contains("kernel"));
  EXPECT_THROW(cmd_sde(c, {"strat"}, a), Unsupported);
  EXPECT_THROW(cmd_sde(c, {"rough"}, a), ConfigError);
}

TEST(Commands, VerifyUnknownSuite) {
  std::ostringstream out;
  EXPECT_THROW(cmd_verify(ExperimentConfig{}, "everything", out), ConfigError);
}

TEST(Commands, VerifyAlgebraSuitePasses) {
  std::ostringstream out;
  EXPECT_EQ(cmd_verify(ExperimentConfig{}, "algebra", out), exit_ok);
  const auto j = Json::parse(out.str());
  EXPECT_EQ(j["suite"], "algebra");
}
