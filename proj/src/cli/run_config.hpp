#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "qsurv/cell_grid.hpp"
#include "qsurv/gaussian_packet.hpp"
#include "qsurv/survival.hpp"

namespace qsurv::cli {

/// Raised for malformed configs, fixture files or command lines (exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputConfig {
  std::string format = "csv";  // csv | json
  std::string path = "-";      // '-' = stdout
  int precision = 15;
};

struct SurvivalConfig {
  std::string kind = "exponential";  // exponential | gamma
  double tau = 0.0;                  // 0 means ideal measurement
  double s = 1.0;
  double tau0 = std::numeric_limits<double>::infinity();
};

struct GridConfig {
  double epsilon = 0.0;  // 0 = derive from the packet width (b / 10)
  int half_extent = 0;   // 0 = derive from coverage
  double coverage = 6.0; // momentum widths around p0
};

struct RunConfig {
  double hbar = 1.0;
  double m = 1.0;
  GaussianPacket packet;  // carries hbar, m after finalize()
  SurvivalConfig survival;
  GridConfig grid;
  OutputConfig output;

  /// Distribution, or nullopt when tau == 0 (ideal run).
  std::optional<SurvivalDistribution> distribution() const;
  /// Momentum grid for the exact position density.
  CellGrid momentum_grid() const;
};

/// Parses and validates the JSON config; unknown keys anywhere are an error.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

}  // namespace qsurv::cli
