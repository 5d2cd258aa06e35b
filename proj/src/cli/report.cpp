#include "levlab/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "levlab/error.hpp"

namespace levlab::cli {
namespace {

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array() || v.is_object()) return csv_cell(Json(v.dump()));
  return v.dump();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

void Report::add_row(Json row) {
  const bool ok = row.value("pass", true);
  if (!ok) {
    std::string msg = row.value("id", std::string("row ") + std::to_string(rows.size()));
    if (row.contains("detail")) {
      msg += ": " + row["detail"].get<std::string>();
    } else if (row.contains("summary")) {
      msg += ": " + row["summary"].get<std::string>();
    }
    failures.push_back(msg);
  }
  rows.push_back(std::move(row));
}

std::string render(const Report& report, Format format) {
  if (format == Format::Json) {
    Json j = Json::object();
    j["command"] = report.command;
    j["parameters"] = report.parameters;
    j["tol"] = report.tol;
    j["passed"] = report.passed();
    j["failures"] = report.failures;
    j["rows"] = report.rows;
    return j.dump(2) + "\n";
  }
  std::vector<std::string> cols;
  for (const auto& row : report.rows) {
    for (const auto& [k, v] : row.items()) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  std::ostringstream out;
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out << (c ? "," : "") << (row.contains(cols[c]) ? csv_cell(row[cols[c]]) : "");
    }
    out << "\n";
  }
  return out.str();
}

void write_report(const Report& report, const std::string& path, Format format) {
  write_file(path, render(report, format));
}

void print_summary(const Report& report, std::ostream& out) {
  out << report.command << ": " << report.rows.size() << " row(s), tol " << report.tol << "\n";
  for (const auto& row : report.rows) {
    out << "  " << (row.value("pass", true) ? "ok   " : "FAIL ") << row.value("id", std::string("?"));
    if (row.contains("summary")) out << "  " << row["summary"].get<std::string>();
    out << "\n";
  }
  out << (report.passed() ? "PASS" : "FAIL") << " (" << report.failures.size() << " failure(s))\n";
}

void emit_plot_data(const Report& report, const std::string& path) {
  if (report.plot.empty()) throw InvalidInput("emit_plot_data: report has no plot data");
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t c = 0; c < report.plot.columns.size(); ++c) out << (c ? "," : "") << report.plot.columns[c];
  out << "\n";
  for (const auto& row : report.plot.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
  write_file(path, out.str());
}

}  // namespace levlab::cli
