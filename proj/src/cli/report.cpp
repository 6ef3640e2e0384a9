#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qsurv::cli {

bool Check::passed() const { return std::abs(value - expected) <= tol; }

Section& Report::add_section(std::string name, std::vector<std::string> columns) {
  sections.push_back({std::move(name), std::move(columns), {}});
  return sections.back();
}

void Report::add_check(std::string name, double value, double expected, double tol) {
  checks.push_back({std::move(name), value, expected, tol});
}

bool Report::all_checks_passed() const {
  for (const Check& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

namespace {

std::string format_cell(const Cell& cell, int precision) {
  if (std::holds_alternative<double>(cell)) {
    return format_double(std::get<double>(cell), precision);
  }
  if (std::holds_alternative<long long>(cell)) {
    return std::to_string(std::get<long long>(cell));
  }
  return std::get<std::string>(cell);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

// Numbers are emitted bare, strings quoted. Non-finite values have no JSON
// literal, so they are quoted like strings.
std::string json_cell(const Cell& cell, int precision) {
  if (std::holds_alternative<std::string>(cell)) {
    return "\"" + json_escape(std::get<std::string>(cell)) + "\"";
  }
  if (std::holds_alternative<double>(cell) && !std::isfinite(std::get<double>(cell))) {
    return "\"" + format_double(std::get<double>(cell), precision) + "\"";
  }
  return format_cell(cell, precision);
}

}  // namespace

std::string to_csv(const Report& report, int precision) {
  std::string out;
  for (const Section& sec : report.sections) {
    out += "# " + sec.name + "\n";
    for (std::size_t i = 0; i < sec.columns.size(); ++i) {
      if (i) out += ',';
      out += sec.columns[i];
    }
    out += '\n';
    for (const auto& row : sec.rows) {
      if (row.size() != sec.columns.size()) {
        throw std::logic_error("report row width mismatch in section " + sec.name);
      }
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_cell(row[i], precision);
      }
      out += '\n';
    }
  }
  if (!report.checks.empty()) {
    out += "# checks\nname,value,expected,tolerance,pass\n";
    for (const Check& c : report.checks) {
      out += c.name + ',' + format_double(c.value, precision) + ',' +
             format_double(c.expected, precision) + ',' + format_double(c.tol, precision) + ',' +
             (c.passed() ? "1" : "0") + '\n';
    }
  }
  return out;
}

std::string to_json(const Report& report, int precision) {
  std::string out = "{\n  \"sections\": [";
  for (std::size_t s = 0; s < report.sections.size(); ++s) {
    const Section& sec = report.sections[s];
    out += (s ? ",\n" : "\n");
    out += "    {\"name\": \"" + json_escape(sec.name) + "\", \"columns\": [";
    for (std::size_t i = 0; i < sec.columns.size(); ++i) {
      if (i) out += ", ";
      out += "\"" + json_escape(sec.columns[i]) + "\"";
    }
    out += "], \"rows\": [";
    for (std::size_t r = 0; r < sec.rows.size(); ++r) {
      if (r) out += ", ";
      out += "[";
      const auto& row = sec.rows[r];
      if (row.size() != sec.columns.size()) {
        throw std::logic_error("report row width mismatch in section " + sec.name);
      }
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ", ";
        out += json_cell(row[i], precision);
      }
      out += "]";
    }
    out += "]}";
  }
  out += "\n  ],\n  \"checks\": [";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const Check& c = report.checks[i];
    out += (i ? ",\n" : "\n");
    out += "    {\"name\": \"" + json_escape(c.name) + "\", \"value\": " +
           format_double(c.value, precision) + ", \"expected\": " +
           format_double(c.expected, precision) + ", \"tolerance\": " +
           format_double(c.tol, precision) + ", \"pass\": " + (c.passed() ? "true" : "false") +
           "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

}  // namespace qsurv::cli
