#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "extremes/models.hpp"

namespace extremes::config {

using json = nlohmann::json;

/// Configuration rejection carrying the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(path) {}
  const std::string& field_path() const { return path_; }

 private:
  std::string path_;
};

/// A model descriptor parsed from the `model` JSON object.
struct ModelSpec {
  enum class Kind { regvar, linear, garch };
  Kind kind = Kind::regvar;
  models::RegVarLaw regvar;
  models::LinearModel linear;
  models::GarchModel garch;
  std::size_t garch_burnin = 1000;

  double tail_alpha() const;
  models::SeriesSample simulate(std::size_t n, std::uint64_t seed) const;
  double a_n(std::size_t n) const;
  std::string describe() const;
  json to_json() const;
};

ModelSpec parse_model(const json& j, const std::string& path);

/// A schema-checked experiment configuration; `params` holds the fully
/// resolved experiment-specific values (defaults applied), suitable for
/// embedding in reports.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  int threads = 0;  // 0 = available parallelism
  bool has_model = false;
  ModelSpec model;
  json params;

  json resolved() const;
};

/// Parses and validates a config document. `experiment` may come from the
/// CLI subcommand; when both are present they must agree. Unknown fields are
/// rejected with their path.
ExperimentConfig parse_config(const json& document,
                              const std::string& experiment_from_cli);

ExperimentConfig load_config_file(const std::string& path,
                                  const std::string& experiment_from_cli);

}  // namespace extremes::config
