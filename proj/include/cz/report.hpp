#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cz {

using Tolerances = std::map<std::string, double, std::less<>>;

struct CheckRecord {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<std::string> error;  ///< set when the check could not be evaluated
};

/// Named residual checks plus metadata, serialized with a fixed key order.
class Report {
 public:
  /// Looks up `name`, then "all", then falls back to `default_tol`.
  static double tolerance_for(const Tolerances& overrides, const std::string& name, double default_tol);

  /// Records max_residual against the effective tolerance; NaN never passes.
  const CheckRecord& add(const std::string& name, double max_residual, double default_tol, const Tolerances& overrides,
                         std::optional<std::string> error = std::nullopt);
  void add_error(const std::string& name, double default_tol, const Tolerances& overrides, const std::string& message);

  const std::vector<CheckRecord>& checks() const { return checks_; }
  bool all_pass() const;

  nlohmann::ordered_json& meta() { return meta_; }
  /// Measured values that are not residuals, kept under meta.results.
  nlohmann::ordered_json& results() { return meta_["results"]; }

  nlohmann::ordered_json to_json() const;
  std::string dump() const;

 private:
  nlohmann::ordered_json meta_ = nlohmann::ordered_json::object();
  std::vector<CheckRecord> checks_;
};

/// Numeric CSV table written with a header row and 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<double>& row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  /// Throws Errc::io_error when the file cannot be written.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

/// Writes text to a file, throwing Errc::io_error on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace cz
