#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "extremes/config.hpp"
#include "extremes/experiments.hpp"
#include "extremes/io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfigError = 2;

int run_experiment(const std::string& name, const std::string& config_path,
                   long long seed_override, int threads_override,
                   const std::string& out_override) {
  namespace fs = std::filesystem;
  extremes::config::ExperimentConfig cfg;
  try {
    if (config_path.empty()) {
      cfg = extremes::config::parse_config(nlohmann::json::object(), name);
    } else {
      cfg = extremes::config::load_config_file(config_path, name);
    }
    if (seed_override >= 0)
      cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (threads_override > 0) cfg.threads = threads_override;
    if (!out_override.empty()) {
      cfg.out_dir = out_override;
    } else if (const char* env = std::getenv("EXTREMELAB_OUT")) {
      if (config_path.empty() || cfg.out_dir == "out") cfg.out_dir = env;
    }
  } catch (const extremes::config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  extremes::experiments::Report report;
  try {
    report = extremes::experiments::run(cfg);
  } catch (const extremes::config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "experiment failed: " << e.what() << "\n";
    return kExitFail;
  }

  try {
    fs::create_directories(cfg.out_dir);
    extremes::io::write_text_file(
        (fs::path(cfg.out_dir) / "report.json").string(),
        report.body.dump(2) + "\n");
    for (const auto& [filename, content] : report.artifacts)
      extremes::io::write_text_file(
          (fs::path(cfg.out_dir) / filename).string(), content);
  } catch (const std::exception& e) {
    std::cerr << "cannot write artifacts: " << e.what() << "\n";
    return kExitFail;
  }

  std::cout << report.body.dump(2) << "\n";
  std::cout << (report.pass ? "PASS" : "FAIL") << " " << cfg.experiment
            << " (report: " << cfg.out_dir << "/report.json)\n";
  return report.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "extremelab: simulation and verification experiments for heavy-tailed "
      "stationary series"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List available experiments");

  struct SubArgs {
    std::string config;
    long long seed = -1;
    int threads = 0;
    std::string out;
  };
  std::map<std::string, SubArgs> args;
  for (const auto& entry : extremes::experiments::catalog()) {
    auto* sub = app.add_subcommand(entry.name, entry.description);
    auto& a = args[entry.name];
    sub->add_option("--config", a.config, "JSON experiment configuration");
    sub->add_option("--seed", a.seed, "Seed override");
    sub->add_option("--threads", a.threads,
                    "Worker threads (default: available parallelism)");
    sub->add_option("--out", a.out, "Output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  if (list->parsed()) {
    for (const auto& entry : extremes::experiments::catalog())
      std::cout << entry.name << "\t" << entry.description << "\n\t checks: "
                << entry.verifies << "\n";
    return kExitPass;
  }

  for (const auto& entry : extremes::experiments::catalog()) {
    if (app.get_subcommand(entry.name)->parsed()) {
      const auto& a = args[entry.name];
      return run_experiment(entry.name, a.config, a.seed, a.threads, a.out);
    }
  }
  std::cerr << "no experiment selected\n";
  return kExitConfigError;
}
