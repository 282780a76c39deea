#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "extremes/cluster.hpp"
#include "extremes/clusters.hpp"
#include "extremes/espace.hpp"
#include "extremes/limitpp.hpp"
#include "extremes/records.hpp"

namespace extremes::io {

using json = nlohmann::json;

/// One value per line under the header `x`, full double precision.
std::string series_to_csv(const std::vector<double>& values);

/// Trimmed canonical form as a JSON array of numbers.
json cluster_to_json(const Cluster& c);
Cluster cluster_from_json(const json& j);

/// {initial, jumps: [[t, value], ...], decorations: [[t, lo, hi], ...]}
json decorated_path_to_json(const espace::DecoratedPath& path);
espace::DecoratedPath decorated_path_from_json(const json& j);

/// Segment list under the header x1,z1,x2,z2.
std::string graph_to_csv(const espace::GraphSet& g);

/// Columns T,P,Q with Q JSON-encoded (quoted).
std::string limit_pp_to_csv(const limitpp::LimitPointProcess& pp);

/// Columns L,Q with Q JSON-encoded (quoted).
std::string cluster_law_to_csv(const std::vector<clusters::ClusterLawPair>& pairs);

/// Columns time,multiplicity.
std::string record_measure_to_csv(const records::RecordMeasure& rm);

/// {name, estimate, se, n, r_n, u} diagnostic record.
json diagnostic_record(const std::string& name, double estimate, double se,
                       std::size_t n, std::size_t r_n, double u);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace extremes::io
