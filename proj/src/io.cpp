#include "extremes/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace extremes::io {

namespace {

std::ostringstream full_precision_stream() {
  std::ostringstream s;
  s.precision(std::numeric_limits<double>::max_digits10);
  return s;
}

std::string json_field(const json& j) {
  // CSV-quote a JSON payload; arrays of numbers contain no quote characters
  // but escape defensively anyway.
  std::string body = j.dump();
  std::string out = "\"";
  for (char c : body) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string series_to_csv(const std::vector<double>& values) {
  auto s = full_precision_stream();
  s << "x\n";
  for (double v : values) s << v << "\n";
  return s.str();
}

json cluster_to_json(const Cluster& c) { return json(c.values()); }

Cluster cluster_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("cluster_from_json: not an array");
  return Cluster(j.get<std::vector<double>>());
}

json decorated_path_to_json(const espace::DecoratedPath& path) {
  json jumps = json::array();
  const auto& times = path.step().times();
  const auto& levels = path.step().levels();
  for (std::size_t i = 0; i < times.size(); ++i)
    jumps.push_back({times[i], levels[i]});
  json decs = json::array();
  for (const auto& d : path.decorations()) decs.push_back({d.t, d.lo, d.hi});
  return json{{"initial", path.step().initial()},
              {"jumps", jumps},
              {"decorations", decs}};
}

espace::DecoratedPath decorated_path_from_json(const json& j) {
  const double initial = j.at("initial").get<double>();
  std::vector<double> times, levels;
  for (const auto& pair : j.at("jumps")) {
    times.push_back(pair.at(0).get<double>());
    levels.push_back(pair.at(1).get<double>());
  }
  std::vector<espace::Decoration> decs;
  for (const auto& d : j.at("decorations"))
    decs.push_back(espace::Decoration{d.at(0).get<double>(),
                                      d.at(1).get<double>(),
                                      d.at(2).get<double>()});
  return espace::DecoratedPath(
      espace::StepPath(initial, std::move(times), std::move(levels)),
      std::move(decs));
}

std::string graph_to_csv(const espace::GraphSet& g) {
  auto s = full_precision_stream();
  s << "x1,z1,x2,z2\n";
  for (const auto& seg : g.segments)
    s << seg.x1 << "," << seg.z1 << "," << seg.x2 << "," << seg.z2 << "\n";
  return s.str();
}

std::string limit_pp_to_csv(const limitpp::LimitPointProcess& pp) {
  auto s = full_precision_stream();
  s << "T,P,Q\n";
  for (const auto& pt : pp.points)
    s << pt.t << "," << pt.p << "," << json_field(cluster_to_json(pt.q))
      << "\n";
  return s.str();
}

std::string cluster_law_to_csv(
    const std::vector<clusters::ClusterLawPair>& pairs) {
  auto s = full_precision_stream();
  s << "L,Q\n";
  for (const auto& pr : pairs)
    s << pr.l << "," << json_field(cluster_to_json(pr.q)) << "\n";
  return s.str();
}

std::string record_measure_to_csv(const records::RecordMeasure& rm) {
  auto s = full_precision_stream();
  s << "time,multiplicity\n";
  for (const auto& [t, m] : rm.atoms) s << t << "," << m << "\n";
  return s.str();
}

json diagnostic_record(const std::string& name, double estimate, double se,
                       std::size_t n, std::size_t r_n, double u) {
  return json{{"name", name}, {"estimate", estimate}, {"se", se},
              {"n", n},       {"r_n", r_n},           {"u", u}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace extremes::io
