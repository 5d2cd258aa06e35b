#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levlab/cli/runner.hpp"
#include "levlab/error.hpp"

namespace {

// --set key=value; the value is read as JSON when it parses, else as a string.
void apply_set(levlab::cli::RunConfig& cfg, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0) throw levlab::ConfigError("--set expects key=value, got '" + item + "'");
  const std::string key = item.substr(0, eq);
  const std::string text = item.substr(eq + 1);
  levlab::cli::Json value = levlab::cli::Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  cfg.parameters[key] = value;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levinson-type index checks: winding of wave-operator boundary maps"};
  std::string command, config_path, out_path, format, plot_path;
  double tol = 0.0;
  int jobs = 0;
  std::vector<std::string> sets;
  app.add_option("command", command, "verify-point | verify-ab | ab-tables | phi-ab | chern | schrodinger-1d | schrodinger-3d");
  app.add_option("--config", config_path, "TOML or JSON run config");
  app.add_option("--out", out_path, "report file");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "OpenMP threads (falls back to LEVLAB_JOBS)")->check(CLI::NonNegativeNumber);
  app.add_option("--plot", plot_path, "CSV of sampled phases / phase shifts");
  app.add_option("--set", sets, "parameter override key=value (repeatable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : levlab::cli::kExitInvalid;
  }

  levlab::cli::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = levlab::cli::load_config(config_path);
    if (!command.empty()) cfg.command = command;
    if (cfg.command.empty()) throw levlab::ConfigError("no command given (positional or in --config)");
    for (const auto& s : sets) apply_set(cfg, s);
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) {
      cfg.format = levlab::cli::parse_format(format);
    } else if (!out_path.empty() && ends_with(out_path, ".csv")) {
      cfg.format = levlab::cli::Format::Csv;
    }
    if (!plot_path.empty()) cfg.plot_path = plot_path;
    if (tol > 0.0) cfg.tol = tol;
    if (jobs > 0) {
      cfg.jobs = jobs;
    } else if (cfg.jobs == 0) {
      if (const char* env = std::getenv("LEVLAB_JOBS")) {
        try {
          cfg.jobs = std::stoi(env);
        } catch (const std::exception&) {
          throw levlab::ConfigError(std::string("LEVLAB_JOBS must be an integer, got '") + env + "'");
        }
      }
    }
  } catch (const levlab::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return levlab::cli::kExitInvalid;
  }
  return levlab::cli::run_main(cfg, std::cout, std::cerr);
}
