#include "chaosint/serialization.hpp"

#include <charconv>

#include "chaosint/errors.hpp"

namespace chaosint {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json to_json(const MultiIndex& a) {
  Json out = Json::array();
  for (const auto& [k, n] : a.entries()) out.push_back(Json::array({k, n}));
  return out;
}

Json to_json(const Truncation& t) { return Json{{"modes", t.modes}, {"max_order", t.max_order}}; }

Json to_json(const ChaosExpansion& f) {
  Json coeffs = Json::array();
  for (const auto& [a, c] : f.coeffs())
    if (c != 0.0) coeffs.push_back(Json{{"alpha", to_json(a)}, {"value", c}});
  return Json{{"trunc", to_json(f.truncation())}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const HValuedChaos& eta) {
  Json coeffs = Json::array();
  for (const auto& [a, row] : eta.rows())
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k] != 0.0) coeffs.push_back(Json{{"alpha", to_json(a)}, {"k", k + 1}, {"value", row[k]}});
  return Json{{"trunc", to_json(eta.truncation())}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const McReport& r) {
  return Json{{"statistic", r.statistic}, {"stderr", r.stderr_value}, {"tolerance", r.tolerance},
              {"pass", r.pass},           {"seed", r.seed},           {"n", r.n}};
}

Json alpha_map_json(const PropagatorSolution& sol) {
  Json alphas = Json::array();
  for (std::size_t j = 0; j < sol.indices.size(); ++j)
    alphas.push_back(Json{{"id", j}, {"alpha", to_json(sol.indices[j])}});
  return Json{{"trunc", to_json(sol.trunc)}, {"alphas", std::move(alphas)}};
}

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace

MultiIndex multi_index_from_json(const Json& j) {
  return guarded("multi-index", [&] {
    if (!j.is_array()) throw ConfigError("multi-index must be an array of [k, a_k] pairs");
    std::vector<MultiIndex::Entry> entries;
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("multi-index entries are [k, a_k] pairs");
      entries.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
    }
    try {
      return MultiIndex::from_entries(std::move(entries));
    } catch (const std::logic_error& e) {
      throw ConfigError(e.what());
    }
  });
}

Truncation truncation_from_json(const Json& j) {
  return guarded("truncation", [&] {
    Truncation t{j.at("modes").get<std::uint32_t>(), j.at("max_order").get<std::uint32_t>()};
    if (t.modes == 0) throw ConfigError("truncation needs modes >= 1");
    return t;
  });
}

ChaosExpansion chaos_from_json(const Json& j) {
  return guarded("chaos expansion", [&] {
    ChaosExpansion f(truncation_from_json(j.at("trunc")));
    for (const auto& c : j.at("coeffs")) f.add(multi_index_from_json(c.at("alpha")), c.at("value").get<double>());
    return f;
  });
}

HValuedChaos h_valued_from_json(const Json& j) {
  return guarded("H-valued chaos", [&] {
    HValuedChaos eta(truncation_from_json(j.at("trunc")));
    for (const auto& c : j.at("coeffs")) {
      const auto k = c.at("k").get<std::uint32_t>();
      try {
        eta.add(multi_index_from_json(c.at("alpha")), k, c.at("value").get<double>());
      } catch (const DimensionError& e) {
        throw ConfigError(e.what());
      }
    }
    return eta;
  });
}

}  // namespace chaosint
