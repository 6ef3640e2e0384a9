#include "cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qsurv::cli {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& known) {
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      throw ConfigError("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

double number_or(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("config: '" + key + "' must be a number");
  return v.get<double>();
}

int integer_or(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError("config: '" + key + "' must be an integer");
  return v.get<int>();
}

std::string string_or(const json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError("config: '" + key + "' must be a string");
  return v.get<std::string>();
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0)) throw ConfigError("config: " + what + " must be positive");
}

}  // namespace

std::optional<SurvivalDistribution> RunConfig::distribution() const {
  if (survival.tau == 0.0) return std::nullopt;
  if (survival.kind == "exponential") {
    return SurvivalDistribution::exponential(survival.tau, survival.tau0);
  }
  return SurvivalDistribution::gamma(survival.tau, survival.s, survival.tau0);
}

CellGrid RunConfig::momentum_grid() const {
  const double b = packet.width_b();
  const double eps = grid.epsilon > 0.0 ? grid.epsilon : b / 10.0;
  if (grid.half_extent > 0) {
    return CellGrid(GridKind::momentum, eps, 1, grid.half_extent);
  }
  const double halfwidth = std::abs(packet.p0) + grid.coverage * b;
  return CellGrid::covering(GridKind::momentum, eps, halfwidth, 1);
}

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  require_keys(doc, "top level", {"constants", "packet", "survival", "grid", "output"});

  RunConfig cfg;
  if (doc.contains("constants")) {
    const json& c = doc.at("constants");
    require_keys(c, "constants", {"hbar", "m"});
    cfg.hbar = number_or(c, "hbar", 1.0);
    cfg.m = number_or(c, "m", 1.0);
  }
  require_positive(cfg.hbar, "constants.hbar");
  require_positive(cfg.m, "constants.m");

  if (doc.contains("packet")) {
    const json& p = doc.at("packet");
    require_keys(p, "packet", {"a", "p0"});
    cfg.packet.a = number_or(p, "a", 1.0);
    cfg.packet.p0 = number_or(p, "p0", 1.0);
  }
  require_positive(cfg.packet.a, "packet.a");
  cfg.packet.hbar = cfg.hbar;
  cfg.packet.m = cfg.m;

  if (doc.contains("survival")) {
    const json& s = doc.at("survival");
    require_keys(s, "survival", {"kind", "tau", "s", "tau0"});
    cfg.survival.kind = string_or(s, "kind", "exponential");
    cfg.survival.tau = number_or(s, "tau", 0.0);
    cfg.survival.s = number_or(s, "s", 1.0);
    cfg.survival.tau0 = number_or(s, "tau0", std::numeric_limits<double>::infinity());
  }
  if (cfg.survival.kind != "exponential" && cfg.survival.kind != "gamma") {
    throw ConfigError("config: survival.kind must be 'exponential' or 'gamma'");
  }
  if (cfg.survival.tau < 0.0) throw ConfigError("config: survival.tau must be >= 0");
  if (cfg.survival.kind == "exponential" && cfg.survival.s != 1.0) {
    throw ConfigError("config: exponential survival requires s = 1");
  }
  if (!(cfg.survival.s >= 1.0)) throw ConfigError("config: survival.s must be >= 1");
  if (!(cfg.survival.tau0 > cfg.survival.tau)) {
    throw ConfigError("config: survival.tau0 must exceed tau");
  }

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    require_keys(g, "grid", {"epsilon", "N", "coverage"});
    cfg.grid.epsilon = number_or(g, "epsilon", 0.0);
    cfg.grid.half_extent = integer_or(g, "N", 0);
    cfg.grid.coverage = number_or(g, "coverage", 6.0);
  }
  if (cfg.grid.epsilon < 0.0) throw ConfigError("config: grid.epsilon must be >= 0");
  if (cfg.grid.half_extent < 0) throw ConfigError("config: grid.N must be >= 0");
  require_positive(cfg.grid.coverage, "grid.coverage");

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    require_keys(o, "output", {"format", "path", "precision"});
    cfg.output.format = string_or(o, "format", "csv");
    cfg.output.path = string_or(o, "path", "-");
    cfg.output.precision = integer_or(o, "precision", 15);
  }
  if (cfg.output.format != "csv" && cfg.output.format != "json") {
    throw ConfigError("config: output.format must be 'csv' or 'json'");
  }
  if (cfg.output.precision < 1 || cfg.output.precision > 17) {
    throw ConfigError("config: output.precision must be in [1, 17]");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace qsurv::cli
