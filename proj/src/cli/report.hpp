#pragma once

#include <deque>
#include <string>
#include <variant>
#include <vector>

namespace qsurv::cli {

/// One report cell: numbers are formatted at emission with the configured
/// significant-digit count, strings pass through.
using Cell = std::variant<double, long long, std::string>;

struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Footer check: value must lie within tol of expected or the run exits with
/// the numerical-violation code.
struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;

  bool passed() const;
};

struct Report {
  // deque keeps section references stable while later sections are added
  std::deque<Section> sections;
  std::vector<Check> checks;

  Section& add_section(std::string name, std::vector<std::string> columns);
  void add_check(std::string name, double value, double expected, double tol);
  bool all_checks_passed() const;
};

std::string format_double(double v, int precision);

/// Sections as '# name' blocks with CSV header+rows; checks in a trailing
/// '# checks' block. Deterministic bytes for identical inputs.
std::string to_csv(const Report& report, int precision);

/// Same content as a JSON document; numbers are written with the same
/// formatter so the bytes stay deterministic.
std::string to_json(const Report& report, int precision);

}  // namespace qsurv::cli
