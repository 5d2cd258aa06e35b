#include "levlab/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "levlab/error.hpp"
#include "levlab/toml_lite.hpp"

namespace levlab::cli {
namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"verify-point", {"model", "coupling", "trace", "expected"}},
      {"verify-ab", {"C", "D", "alpha", "row", "expected"}},
      {"ab-tables", {"table"}},
      {"phi-ab", {"a", "b", "extra_orders", "expected"}},
      {"chern", {"lambda1_arg", "lambda2_arg", "alpha", "n_start", "n_xi", "levels", "fd_step", "expected"}},
      {"schrodinger-1d", {"potential", "expected"}},
      {"schrodinger-3d", {"potential", "p", "l_max", "k_min", "k_max", "n_k", "expected"}},
  };
  return keys;
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("parameter '" + key + "': " + what);
}

struct Call {
  std::string name;
  std::vector<double> args;
};

std::string trim(std::string s) {
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), [](unsigned char ch) { return !std::isspace(ch); }));
  s.erase(std::find_if(s.rbegin(), s.rend(), [](unsigned char ch) { return !std::isspace(ch); }).base(), s.end());
  return s;
}

Call parse_call(const std::string& raw) {
  Call c;
  const std::string spec = trim(raw);
  const auto open = spec.find('(');
  if (open == std::string::npos) {
    c.name = trim(spec);
    return c;
  }
  if (spec.back() != ')') throw ConfigError("potential '" + spec + "': missing ')'");
  c.name = trim(spec.substr(0, open));
  std::stringstream ss(spec.substr(open + 1, spec.size() - open - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const std::string t = trim(item);
      c.args.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ConfigError("potential '" + spec + "': bad argument '" + item + "'");
    }
  }
  return c;
}

void arity(const Call& c, std::size_t n, const std::string& spec) {
  if (c.args.size() != n) {
    throw ConfigError("potential '" + spec + "': expected " + std::to_string(n) + " argument(s)");
  }
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ConfigError("format must be csv or json, got '" + s + "'");
}

const char* to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"verify-point", "verify-ab", "ab-tables", "phi-ab",
                                                 "chern", "schrodinger-1d", "schrodinger-3d"};
  return names;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a table/object");
  static const std::set<std::string> top = {"command", "parameters", "output", "tol", "jobs"};
  for (const auto& [k, v] : j.items()) {
    if (!top.count(k)) throw ConfigError("unknown top-level key '" + k + "'");
  }
  RunConfig cfg;
  if (j.contains("command")) {
    if (!j["command"].is_string()) throw ConfigError("command must be a string");
    cfg.command = j["command"].get<std::string>();
  }
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) throw ConfigError("parameters must be a table");
    cfg.parameters = j["parameters"];
  }
  if (j.contains("output")) {
    const Json& o = j["output"];
    if (!o.is_object()) throw ConfigError("output must be a table");
    for (const auto& [k, v] : o.items()) {
      if (k == "path" && v.is_string()) {
        cfg.out_path = v.get<std::string>();
      } else if (k == "format" && v.is_string()) {
        cfg.format = parse_format(v.get<std::string>());
      } else if (k == "plot" && v.is_string()) {
        cfg.plot_path = v.get<std::string>();
      } else {
        throw ConfigError("output." + k + ": unknown key or wrong type");
      }
    }
  }
  if (j.contains("tol")) {
    if (!j["tol"].is_number()) throw ConfigError("tol must be a number");
    cfg.tol = j["tol"].get<double>();
  }
  if (j.contains("jobs")) {
    if (!j["jobs"].is_number_integer()) throw ConfigError("jobs must be an integer");
    cfg.jobs = j["jobs"].get<int>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  if (ends_with(path, ".json")) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    try {
      return config_from_json(Json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config '" + path + "': " + e.what());
    }
  }
  return config_from_json(toml_lite::parse_file(path));
}

void validate(const RunConfig& cfg) {
  const auto& keys = allowed_keys();
  const auto it = keys.find(cfg.command);
  if (it == keys.end()) {
    std::string list;
    for (const auto& c : commands()) list += (list.empty() ? "" : ", ") + c;
    throw ConfigError("unknown command '" + cfg.command + "' (expected one of " + list + ")");
  }
  for (const auto& [k, v] : cfg.parameters.items()) {
    if (!it->second.count(k)) throw ConfigError("unknown parameter '" + k + "' for command '" + cfg.command + "'");
  }
  if (cfg.tol && !(*cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.jobs < 0) throw ConfigError("jobs must be >= 0");
}

double get_number(const Json& params, const std::string& key, double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_number()) bad(key, "expected a number");
  return params[key].get<double>();
}

int get_int(const Json& params, const std::string& key, int fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_number_integer()) bad(key, "expected an integer");
  return params[key].get<int>();
}

std::string get_string(const Json& params, const std::string& key, const std::string& fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_string()) bad(key, "expected a string");
  return params[key].get<std::string>();
}

std::vector<double> get_numbers(const Json& params, const std::string& key, const std::vector<double>& fallback) {
  if (!params.contains(key)) return fallback;
  const Json& v = params[key];
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty()) bad(key, "expected a number or a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) bad(key, "array entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::string> get_strings(const Json& params, const std::string& key,
                                     const std::vector<std::string>& fallback) {
  if (!params.contains(key)) return fallback;
  const Json& v = params[key];
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array() || v.empty()) bad(key, "expected a string or a non-empty array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) bad(key, "array entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Mat2 get_matrix2(const Json& params, const std::string& key) {
  if (!params.contains(key)) bad(key, "missing");
  const Json& m = params[key];
  if (!m.is_array() || m.size() != 2) bad(key, "expected a 2x2 array");
  Mat2 out;
  for (int r = 0; r < 2; ++r) {
    if (!m[r].is_array() || m[r].size() != 2) bad(key, "expected a 2x2 array");
    for (int c = 0; c < 2; ++c) {
      const Json& e = m[r][c];
      if (e.is_number()) {
        out(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        out(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        bad(key, "entries must be numbers or [re, im]");
      }
    }
  }
  return out;
}

potentials::Potential1D parse_potential_1d(const std::string& spec) {
  namespace P = potentials;
  if (spec.rfind("csv:", 0) == 0) {
    std::vector<double> x, v;
    P::read_table_csv(spec.substr(4), x, v);
    return P::tabulated_1d(x, v);
  }
  const Call c = parse_call(spec);
  if (c.name == "zero") {
    arity(c, 0, spec);
    return P::zero_1d();
  }
  if (c.name == "square_well") {
    arity(c, 2, spec);
    return P::square_well_1d(c.args[0], c.args[1]);
  }
  if (c.name == "gaussian") {
    arity(c, 2, spec);
    return P::gaussian_1d(c.args[0], c.args[1]);
  }
  if (c.name == "sech2") {
    arity(c, 1, spec);
    return P::sech2_1d(c.args[0]);
  }
  throw ConfigError("unknown potential '" + spec + "'");
}

potentials::RadialPotential parse_potential_3d(const std::string& spec) {
  namespace P = potentials;
  if (spec.rfind("csv:", 0) == 0) {
    std::vector<double> r, v;
    P::read_table_csv(spec.substr(4), r, v);
    return P::tabulated_3d(r, v);
  }
  const Call c = parse_call(spec);
  if (c.name == "zero") {
    arity(c, 0, spec);
    return P::zero_3d();
  }
  if (c.name == "square_well") {
    arity(c, 2, spec);
    return P::square_well_3d(c.args[0], c.args[1]);
  }
  if (c.name == "gaussian") {
    arity(c, 2, spec);
    return P::gaussian_3d(c.args[0], c.args[1]);
  }
  throw ConfigError("unknown radial potential '" + spec + "'");
}

}  // namespace levlab::cli
