#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "levlab/potentials.hpp"
#include "levlab/types.hpp"

namespace levlab::cli {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };
Format parse_format(const std::string& s);
const char* to_string(Format f);

struct RunConfig {
  std::string command;
  Json parameters = Json::object();
  std::string out_path;  ///< empty: no report file
  Format format = Format::Json;
  std::optional<double> tol;
  std::string plot_path;  ///< empty: no plot data
  int jobs = 0;           ///< 0: leave the OpenMP default
};

const std::vector<std::string>& commands();

/// Reads a .toml or .json file with keys command, [parameters], [output], tol, jobs.
RunConfig load_config(const std::string& path);
RunConfig config_from_json(const Json& j);

/// Throws ConfigError naming the command and the offending parameter.
void validate(const RunConfig& cfg);

// Typed access to parameters; all throw ConfigError on a type mismatch.
double get_number(const Json& params, const std::string& key, double fallback);
int get_int(const Json& params, const std::string& key, int fallback);
std::string get_string(const Json& params, const std::string& key, const std::string& fallback);
/// A scalar or an array of numbers.
std::vector<double> get_numbers(const Json& params, const std::string& key, const std::vector<double>& fallback);
std::vector<std::string> get_strings(const Json& params, const std::string& key,
                                     const std::vector<std::string>& fallback);
/// 2x2 matrix; each entry is a number or [re, im].
Mat2 get_matrix2(const Json& params, const std::string& key);

/// "zero", "square_well(depth, width)", "gaussian(depth, width)", "sech2(strength)", "csv:path".
potentials::Potential1D parse_potential_1d(const std::string& spec);
potentials::RadialPotential parse_potential_3d(const std::string& spec);

}  // namespace levlab::cli
