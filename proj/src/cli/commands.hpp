#pragma once

#include <vector>

#include "cli/fixtures.hpp"
#include "cli/report.hpp"
#include "cli/run_config.hpp"

namespace qsurv::cli {

/// Outcome table, post-measurement states and ideal vs non-ideal columns for
/// an observable fixture.
Report cmd_measure(const RunConfig& cfg, const ObservableFixture& fixture);

/// Dimensionless position profile over a xi range, one column per eps0.
Report cmd_fig1(const std::vector<double>& eps0_list, double xi_min, double xi_max,
                double xi_step);

/// Position/momentum densities, renormalization and uncertainty table for the
/// configured packet. Warnings (eps0 > 0.1) go to stderr.
Report cmd_survival(const RunConfig& cfg);

/// Exact vs asymptotic tail moments and renormalization constants per sigma.
Report cmd_asymptotics(const RunConfig& cfg, const std::vector<double>& sigma_list);

/// Unitarity defects, transition-amplitude diagnostics and the double-limit
/// probe for a scattering model fixture.
Report cmd_scattering_demo(const ModelFixture& fixture, const std::vector<double>& nu_list,
                           const std::vector<double>& eps_list);

}  // namespace qsurv::cli
