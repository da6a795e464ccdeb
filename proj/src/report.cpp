#include "cz/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cz/errors.hpp"

namespace cz {

double Report::tolerance_for(const Tolerances& overrides, const std::string& name, double default_tol) {
  if (auto it = overrides.find(name); it != overrides.end()) return it->second;
  if (auto it = overrides.find("all"); it != overrides.end()) return it->second;
  return default_tol;
}

const CheckRecord& Report::add(const std::string& name, double max_residual, double default_tol,
                               const Tolerances& overrides, std::optional<std::string> error) {
  CheckRecord rec;
  rec.name = name;
  rec.max_residual = max_residual;
  rec.tolerance = tolerance_for(overrides, name, default_tol);
  rec.pass = max_residual <= rec.tolerance;
  rec.error = std::move(error);
  checks_.push_back(std::move(rec));
  return checks_.back();
}

void Report::add_error(const std::string& name, double default_tol, const Tolerances& overrides,
                       const std::string& message) {
  CheckRecord rec;
  rec.name = name;
  rec.max_residual = std::nan("");
  rec.tolerance = tolerance_for(overrides, name, default_tol);
  rec.pass = false;
  rec.error = message;
  checks_.push_back(std::move(rec));
}

bool Report::all_pass() const {
  for (const CheckRecord& c : checks_)
    if (!c.pass) return false;
  return true;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json out;
  out["meta"] = meta_;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckRecord& c : checks_) {
    nlohmann::ordered_json rec;
    rec["name"] = c.name;
    if (std::isfinite(c.max_residual))
      rec["max_residual"] = c.max_residual;
    else
      rec["max_residual"] = nullptr;
    rec["tolerance"] = c.tolerance;
    rec["pass"] = c.pass;
    if (c.error) rec["error"] = *c.error;
    checks.push_back(std::move(rec));
  }
  out["checks"] = std::move(checks);
  return out;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size()) throw Error(Errc::invalid_argument, "CSV row width does not match the header");
  rows_.push_back(row);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t k = 0; k < header_.size(); ++k) {
    if (k) out += ',';
    out += header_[k];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[k]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::string& path) const { write_text(path, str()); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(Errc::io_error, "failed writing '" + path + "'");
}

}  // namespace cz
