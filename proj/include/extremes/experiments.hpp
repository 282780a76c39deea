#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "extremes/config.hpp"

namespace extremes::experiments {

using json = nlohmann::json;

struct Report {
  json body;
  bool pass = false;
  /// Additional files to place next to report.json (name -> content).
  std::map<std::string, std::string> artifacts;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::string verifies;
};

const std::vector<CatalogEntry>& catalog();

/// Dispatches to the named experiment. Throws config::ConfigError for
/// configuration problems; any other exception is an execution failure.
Report run(const config::ExperimentConfig& cfg);

}  // namespace extremes::experiments
