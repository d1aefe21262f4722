#include "chaosint/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "chaosint/basis.hpp"
#include "chaosint/errors.hpp"

namespace chaosint::cli {

void ExperimentConfig::validate() const {
  if (kernel != "brownian" && kernel != "fbm" && kernel != "custom-grid")
    throw ConfigError("kernel must be brownian, fbm or custom-grid, got '" + kernel + "'");
  if (kernel == "fbm" && !(hurst > 0.5 && hurst < 1.0)) throw ConfigError("hurst must lie in (1/2, 1) for fbm");
  if (kernel == "custom-grid" && kernel_csv.empty()) throw ConfigError("custom-grid needs kernel_csv");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("horizon must be positive");
  parse_basis_kind(basis);
  if (modes < 1) throw ConfigError("modes must be positive");
  if (order < 1) throw ConfigError("order must be positive");
  if (grid < 1) throw ConfigError("grid must be positive");
  if (samples < 1) throw ConfigError("samples must be positive");
  if (quadrature.panels < 1 || quadrature.nodes < 1 || quadrature.grading_levels < 0)
    throw ConfigError("quadrature panels and nodes must be positive");
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
}

Json config_to_json(const ExperimentConfig& c) {
  return Json{{"kernel", c.kernel},
              {"hurst", c.hurst},
              {"horizon", c.horizon},
              {"kernel_csv", c.kernel_csv},
              {"basis", c.basis},
              {"modes", c.modes},
              {"order", c.order},
              {"grid", c.grid},
              {"quadrature",
               Json{{"panels", c.quadrature.panels},
                    {"nodes", c.quadrature.nodes},
                    {"grading_levels", c.quadrature.grading_levels}}},
              {"seed", c.seed},
              {"samples", c.samples},
              {"out", c.out},
              {"format", c.format}};
}

namespace {

template <class T>
void read(const Json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

void reject_unknown(const Json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key '" + where + key + "'");
}

}  // namespace

ExperimentConfig config_from_json(const Json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"kernel", "hurst", "horizon", "kernel_csv", "basis", "modes", "order", "grid", "quadrature", "seed",
                  "samples", "out", "format"},
                 "");
  read(j, "kernel", c.kernel);
  read(j, "hurst", c.hurst);
  read(j, "horizon", c.horizon);
  read(j, "kernel_csv", c.kernel_csv);
  read(j, "basis", c.basis);
  read(j, "modes", c.modes);
  read(j, "order", c.order);
  read(j, "grid", c.grid);
  if (j.contains("quadrature")) {
    const Json& q = j.at("quadrature");
    if (!q.is_object()) throw ConfigError("config field 'quadrature' must be an object");
    reject_unknown(q, {"panels", "nodes", "grading_levels"}, "quadrature.");
    read(q, "panels", c.quadrature.panels);
    read(q, "nodes", c.quadrature.nodes);
    read(q, "grading_levels", c.quadrature.grading_levels);
  }
  read(j, "seed", c.seed);
  read(j, "samples", c.samples);
  read(j, "out", c.out);
  read(j, "format", c.format);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j, std::move(base));
}

void save_config(const ExperimentConfig& c, const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file " + path.string());
  out << config_to_json(c).dump(2) << '\n';
}

}  // namespace chaosint::cli
