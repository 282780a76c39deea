#include "extremes/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace extremes::config {

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key))
      throw ConfigError(path.empty() ? key : path + "." + key,
                        "unknown field");
  }
}

double require_number(const json& obj, const std::string& key,
                      const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + key, "missing field");
  if (!obj.at(key).is_number())
    throw ConfigError(path + key, "expected a number");
  return obj.at(key).get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& path) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number())
    throw ConfigError(path + key, "expected a number");
  return obj.at(key).get<double>();
}

std::size_t size_or(const json& obj, const std::string& key,
                    std::size_t fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer() || obj.at(key).get<long long>() < 0)
    throw ConfigError(path + key, "expected a nonnegative integer");
  return obj.at(key).get<std::size_t>();
}

}  // namespace

ModelSpec parse_model(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "model must be an object");
  if (!j.contains("type")) throw ConfigError(path + ".type", "missing field");
  const std::string type = j.at("type").get<std::string>();
  ModelSpec spec;
  const std::string p = path + ".";
  try {
    if (type == "regvar") {
      reject_unknown(j, {"type", "alpha", "p"}, path);
      spec.kind = ModelSpec::Kind::regvar;
      spec.regvar.alpha = require_number(j, "alpha", p);
      spec.regvar.p = number_or(j, "p", 1.0, p);
      spec.regvar.validate();
    } else if (type == "linear") {
      reject_unknown(j, {"type", "coeffs", "j_min", "alpha", "p"}, path);
      spec.kind = ModelSpec::Kind::linear;
      if (!j.contains("coeffs") || !j.at("coeffs").is_array())
        throw ConfigError(p + "coeffs", "expected an array of numbers");
      spec.linear.coeffs = j.at("coeffs").get<std::vector<double>>();
      spec.linear.j_min =
          static_cast<long>(number_or(j, "j_min", 0.0, p));
      spec.linear.innovation.alpha = require_number(j, "alpha", p);
      spec.linear.innovation.p = number_or(j, "p", 1.0, p);
      spec.linear.validate();
    } else if (type == "garch") {
      reject_unknown(j, {"type", "a0", "a1", "b1", "tail_alpha_hint",
                         "burnin"},
                     path);
      spec.kind = ModelSpec::Kind::garch;
      spec.garch.a0 = require_number(j, "a0", p);
      spec.garch.a1 = require_number(j, "a1", p);
      spec.garch.b1 = require_number(j, "b1", p);
      if (j.contains("tail_alpha_hint"))
        spec.garch.tail_alpha_hint = j.at("tail_alpha_hint").get<double>();
      spec.garch_burnin = size_or(j, "burnin", 1000, p);
      spec.garch.validate();
    } else {
      throw ConfigError(p + "type", "unknown model type '" + type + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return spec;
}

double ModelSpec::tail_alpha() const {
  switch (kind) {
    case Kind::regvar:
      return regvar.alpha;
    case Kind::linear:
      return linear.innovation.alpha;
    case Kind::garch:
      if (!garch.tail_alpha_hint)
        throw ConfigError("model.tail_alpha_hint",
                          "required for GARCH experiments");
      return *garch.tail_alpha_hint;
  }
  return 0.0;
}

models::SeriesSample ModelSpec::simulate(std::size_t n,
                                         std::uint64_t seed) const {
  switch (kind) {
    case Kind::regvar:
      return models::sample_regvar(regvar, n, seed);
    case Kind::linear:
      return models::simulate_linear(linear, n, seed);
    case Kind::garch:
      return models::simulate_garch(garch, n, garch_burnin, seed);
  }
  throw std::logic_error("unreachable");
}

double ModelSpec::a_n(std::size_t n) const {
  switch (kind) {
    case Kind::regvar:
      return models::quantile_an(regvar, n);
    case Kind::linear:
      return models::quantile_an(linear, n);
    case Kind::garch:
      return models::quantile_an(garch, n);
  }
  throw std::logic_error("unreachable");
}

std::string ModelSpec::describe() const {
  switch (kind) {
    case Kind::regvar:
      return models::describe(regvar);
    case Kind::linear:
      return models::describe(linear);
    case Kind::garch:
      return models::describe(garch);
  }
  return {};
}

json ModelSpec::to_json() const {
  switch (kind) {
    case Kind::regvar:
      return json{{"type", "regvar"},
                  {"alpha", regvar.alpha},
                  {"p", regvar.p}};
    case Kind::linear:
      return json{{"type", "linear"},
                  {"coeffs", linear.coeffs},
                  {"j_min", linear.j_min},
                  {"alpha", linear.innovation.alpha},
                  {"p", linear.innovation.p}};
    case Kind::garch: {
      json g{{"type", "garch"}, {"a0", garch.a0},
             {"a1", garch.a1},  {"b1", garch.b1},
             {"burnin", garch_burnin}};
      if (garch.tail_alpha_hint) g["tail_alpha_hint"] = *garch.tail_alpha_hint;
      return g;
    }
  }
  return {};
}

namespace {

const std::set<std::string> kCommonKeys = {"experiment", "seed", "out_dir",
                                           "threads", "model"};

json default_params(const std::string& experiment) {
  if (experiment == "theta")
    return json{{"n", 1000000}, {"r_n", 1000},         {"u", 1.0},
                {"replications", 200}, {"tolerance", 0.05}};
  if (experiment == "cluster-law")
    return json{{"n", 10000},          {"r_n", 100},
                {"u", 0.1},            {"v", 2.0},
                {"min_qualifying", 2000}, {"max_replications", 20000}};
  if (experiment == "nu")
    return json{{"n", 1000000}, {"r_n", 1000},    {"u", 1.0},
                {"replications", 64}, {"limit_mc", 20000},
                {"functionals",
                 json::array({json{{"type", "sup_threshold"}, {"y0", 1.0}},
                              json{{"type", "sup_threshold"}, {"y0", 2.0}},
                              json{{"type", "capped_abs_sum"},
                                   {"cap", 5.0},
                                   {"floor", 1.0}}})}};
  if (experiment == "sums")
    return json{{"sup_n", 100000},
                {"sup_replications", 5000},
                {"sup_limit_draws", 50000},
                {"sup_tolerance", 0.03},
                {"p_min", 1e-4},
                {"n_grid", json::array({1000, 10000, 100000})},
                {"m2_replications", 4000},
                {"m2_limit_draws", 20000},
                {"final_gap_tolerance", 0.05}};
  if (experiment == "records")
    return json{{"n", 1000000},      {"r_n", 1000},
                {"window", json::array({0.1, 1.0})},
                {"replications", 1000}, {"limit_draws", 100000}};
  if (experiment == "metric-selftest")
    return json{{"triples", 10000}, {"hausdorff_pairs", 200},
                {"grid_delta", 1e-3}};
  if (experiment == "figures") return json{{"n", 2000}};
  throw ConfigError("experiment", "unknown experiment '" + experiment + "'");
}

}  // namespace

ExperimentConfig parse_config(const json& document,
                              const std::string& experiment_from_cli) {
  if (!document.is_object())
    throw ConfigError("", "config must be a JSON object");
  ExperimentConfig cfg;
  if (document.contains("experiment")) {
    if (!document.at("experiment").is_string())
      throw ConfigError("experiment", "expected a string");
    cfg.experiment = document.at("experiment").get<std::string>();
    if (!experiment_from_cli.empty() &&
        cfg.experiment != experiment_from_cli)
      throw ConfigError("experiment",
                        "config names '" + cfg.experiment +
                            "' but the command line asked for '" +
                            experiment_from_cli + "'");
  } else {
    if (experiment_from_cli.empty())
      throw ConfigError("experiment", "missing field");
    cfg.experiment = experiment_from_cli;
  }

  json params = default_params(cfg.experiment);
  std::set<std::string> allowed(kCommonKeys);
  for (const auto& [key, value] : params.items()) allowed.insert(key);
  reject_unknown(document, allowed, "");

  if (document.contains("seed")) {
    if (!document.at("seed").is_number_integer())
      throw ConfigError("seed", "expected an integer");
    cfg.seed = document.at("seed").get<std::uint64_t>();
  }
  if (document.contains("out_dir")) {
    if (!document.at("out_dir").is_string())
      throw ConfigError("out_dir", "expected a string");
    cfg.out_dir = document.at("out_dir").get<std::string>();
  }
  if (document.contains("threads")) {
    if (!document.at("threads").is_number_integer())
      throw ConfigError("threads", "expected an integer");
    cfg.threads = document.at("threads").get<int>();
  }
  if (document.contains("model")) {
    cfg.model = parse_model(document.at("model"), "model");
    cfg.has_model = true;
  }

  for (const auto& [key, value] : document.items()) {
    if (kCommonKeys.count(key)) continue;
    // Type agreement with the default value.
    const json& def = params.at(key);
    if (def.is_number() && !value.is_number())
      throw ConfigError(key, "expected a number");
    if (def.is_array() && !value.is_array())
      throw ConfigError(key, "expected an array");
    params[key] = value;
  }
  cfg.params = std::move(params);
  return cfg;
}

json ExperimentConfig::resolved() const {
  json out{{"experiment", experiment},
           {"seed", seed},
           {"out_dir", out_dir},
           {"threads", threads}};
  if (has_model) out["model"] = model.to_json();
  for (const auto& [key, value] : params.items()) out[key] = value;
  return out;
}

ExperimentConfig load_config_file(const std::string& path,
                                  const std::string& experiment_from_cli) {
  std::ifstream f(path);
  if (!f) throw ConfigError("", "cannot open config file: " + path);
  json document;
  try {
    document = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(document, experiment_from_cli);
}

}  // namespace extremes::config
