#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "levlab/cli/config.hpp"

namespace levlab::cli {

/// Numeric table for plot data.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  bool empty() const { return rows.empty(); }
};

struct Report {
  std::string command;
  Json parameters = Json::object();
  double tol = 0.0;
  std::vector<Json> rows;  ///< one object per check, every row has "id" and "pass"
  std::vector<std::string> failures;
  Table plot;

  bool passed() const { return failures.empty(); }
  /// Appends a row and records a failure message when row["pass"] is false.
  void add_row(Json row);
};

/// JSON: {command, parameters, tol, passed, failures, rows}. CSV: the union of
/// row keys in first-seen order as header, one line per row.
std::string render(const Report& report, Format format);
void write_report(const Report& report, const std::string& path, Format format);

/// Short human-readable summary, one line per row plus a verdict.
void print_summary(const Report& report, std::ostream& out);

/// CSV of report.plot. Throws InvalidInput when there is nothing to plot.
void emit_plot_data(const Report& report, const std::string& path);

}  // namespace levlab::cli
